from healthadvisor.risk_classifier.data import (
    AGE_GROUPS,
    ATTRIBUTES,
    AttributeSchema,
    LabeledDataset,
    PersonProfile,
    dataset_from_records,
    read_dataset,
    read_profiles,
    write_dataset,
)
from healthadvisor.risk_classifier.info import conditional_entropy, entropy, information_gain
from healthadvisor.risk_classifier.metrics import EvalMetrics, evaluate
from healthadvisor.risk_classifier.oner import OneRModel, train_oner
from healthadvisor.risk_classifier.persist import dumps_model, load_model, save_model
from healthadvisor.risk_classifier.tree import (
    DecisionTree,
    Internal,
    Leaf,
    RiskVector,
    TreeConfig,
    predict_risks,
    train_tree,
)
