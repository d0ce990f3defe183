import math
from dataclasses import dataclass

from healthadvisor.exceptions import DomainError


@dataclass(frozen=True)
class EvalMetrics:
    accuracy: float
    rmse: float

    def lines(self):
        return f"accuracy={self.accuracy:.6f}\nrmse={self.rmse:.6f}\n"


def evaluate(model, dataset):
    """Top-1 accuracy and probabilistic RMSE against one-hot truth over all classes.

    ``model`` is anything with ``predict(profile) -> RiskVector`` and a ``schema``;
    OneR yields one-hot vectors, so its RMSE reduces to sqrt(2 * error_rate / K).
    """
    if len(dataset) == 0:
        raise DomainError("cannot evaluate on an empty dataset")
    classes = set(model.schema.class_names)
    K = len(classes)
    correct = 0
    squared = 0.0
    for profile, label in dataset.rows:
        if label not in classes:
            raise DomainError(f"label {label!r} unknown to the model")
        risks = model.predict(profile)
        probs = risks.as_dict()
        if risks.top == label:
            correct += 1
        # sum over classes of (p - onehot)^2, touching only non-zero predictions
        p_true = probs.get(label, 0.0)
        squared += sum(p * p for p in probs.values()) - 2.0 * p_true + 1.0
    n = len(dataset)
    rmse = math.sqrt(max(squared, 0.0) / (n * K))
    return EvalMetrics(correct / n, min(rmse, 1.0))
