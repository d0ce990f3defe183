"""Seeded synthetic profiles over the Table-1 attribute schema.

Labels are a fixed function of (age_group, prior_health_records, state):
all 960 combinations are ordered by the SHA-256 hex digest of
``"{age_group}|{prior_health_records}|{state}"`` and the combination at rank
``r`` gets ``CONDITIONS[r % n_classes]``.  The remaining attributes are noise.
"""
import hashlib
from functools import lru_cache

import numpy as np

from healthadvisor.exceptions import DomainError
from healthadvisor.risk_classifier.data import AGE_GROUPS, ATTRIBUTES, LabeledDataset, PersonProfile, infer_schema

GENDERS = ("F", "M")
ETHNICITIES = ("African American", "Asian", "Hispanic", "Latino", "Native American", "White")
STATES = (
    "Alabama", "California", "Florida", "Georgia", "Illinois",
    "Louisiana", "New York", "Ohio", "Texas", "Washington",
)
OCCUPATIONS = ("Banker", "Driver", "Farmer", "Nurse", "Retired", "Software Engineer", "Student", "Teacher")
MARITAL = ("Divorced", "Married", "Single", "Widowed")
PRIOR_RECORDS = (
    "Asthma History", "Back Pain", "Diabetes History", "Fracture in leg", "High Cholesterol",
    "Hypertension", "Instability in body", "None", "Obesity", "Smoking", "Stress", "Traffic Accident",
)
CONDITIONS = (
    "Alzheimer's disease", "Anemia", "Aortic Aneurysm", "Arthritis", "Asthma",
    "Bladder Cancer", "Breast Cancer", "Bronchitis", "Chronic Kidney Disease", "Chronic Pain",
    "Cirrhosis", "Colon Cancer", "Coronary Heart Disease", "COPD", "Dementia",
    "Depression", "Diabetes", "Drowning", "Emphysema", "Endocarditis",
    "Epilepsy", "Falls", "Hepatitis", "HIV", "Hypertension",
    "Influenza and Pneumonia", "Leukemia", "Liver Cancer", "Lumbar Back disease", "Lung Cancer",
    "Lung Disease", "Lymphoma", "Malnutrition", "Multiple Sclerosis", "Obesity",
    "Oral Cancer", "Osteoporosis", "Ovarian Cancer", "Pancreatic Cancer", "Parkinson's disease",
    "Peptic Ulcer", "Poisoning", "Prostate Cancer", "Rheumatic Heart Disease", "Shock in body",
    "Skin Cancer", "Stomach Cancer", "Stroke", "Suicide", "Tuberculosis",
)
MAX_CLASSES = len(CONDITIONS)

DOMAINS = {
    "age_group": AGE_GROUPS,
    "gender": GENDERS,
    "ethnicity": ETHNICITIES,
    "state": STATES,
    "occupation": OCCUPATIONS,
    "marital_status": MARITAL,
    "prior_health_records": PRIOR_RECORDS,
}


@lru_cache(maxsize=None)
def combination_ranks():
    """(age_group, prior_health_records, state) -> rank in digest order."""
    combos = [(a, p, s) for a in AGE_GROUPS for p in PRIOR_RECORDS for s in STATES]
    combos.sort(key=lambda c: hashlib.sha256("|".join(c).encode("utf-8")).hexdigest())
    return {c: r for r, c in enumerate(combos)}


def label_for(age_group, prior_health_records, state, n_classes):
    return CONDITIONS[combination_ranks()[(age_group, prior_health_records, state)] % n_classes]


def generate_synthetic_dataset(seed, n_rows, n_classes):
    """Identical arguments give an identical dataset (person ids included).

    The first ``n_classes`` draws are forced to cover every class, so
    ``n_rows == n_classes`` already yields all labels.
    """
    if not 1 <= n_classes <= MAX_CLASSES:
        raise DomainError(f"n_classes must be in [1, {MAX_CLASSES}], got {n_classes}")
    if n_rows < n_classes:
        raise DomainError(f"n_rows ({n_rows}) must be >= n_classes ({n_classes})")
    rng = np.random.default_rng(seed)
    ranks = combination_ranks()
    by_rank = sorted(ranks, key=ranks.get)
    n_combos = len(by_rank)

    # rank r has class r % n_classes, so class c owns ranks c, c + n_classes, ...
    per_class = [(n_combos - c + n_classes - 1) // n_classes for c in range(n_classes)]
    forced = [c + n_classes * int(rng.integers(per_class[c])) for c in range(n_classes)]
    rest = rng.integers(n_combos, size=n_rows - n_classes)
    combo_rank = np.concatenate([np.array(forced, dtype=np.int64), rest.astype(np.int64)])
    noise = {
        a: rng.integers(len(DOMAINS[a]), size=n_rows)
        for a in ("gender", "ethnicity", "occupation", "marital_status")
    }
    order = rng.permutation(n_rows)

    rows = []
    for i in order:
        age, prior, state = by_rank[combo_rank[i]]
        values = {
            "age_group": age,
            "gender": GENDERS[noise["gender"][i]],
            "ethnicity": ETHNICITIES[noise["ethnicity"][i]],
            "state": state,
            "occupation": OCCUPATIONS[noise["occupation"][i]],
            "marital_status": MARITAL[noise["marital_status"][i]],
            "prior_health_records": prior,
        }
        rows.append((values, CONDITIONS[combo_rank[i] % n_classes]))
    person_ids = [f"S{k:06d}" for k in range(n_rows)]
    profiles = [PersonProfile(v, pid) for (v, _), pid in zip(rows, person_ids)]
    labels = [label for _, label in rows]
    schema = infer_schema(profiles, labels, ATTRIBUTES, {"age_group": AGE_GROUPS})
    return LabeledDataset(schema, tuple(zip(profiles, labels)))
