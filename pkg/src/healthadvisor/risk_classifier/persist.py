"""Model documents: sorted-key JSON holding schema, tree, OneR baseline and training metadata."""
import json
from pathlib import Path

from healthadvisor.exceptions import ValidationError
from healthadvisor.risk_classifier.data import AttributeSchema
from healthadvisor.risk_classifier.oner import OneRModel
from healthadvisor.risk_classifier.tree import DecisionTree, Internal, Leaf, TreeConfig

FORMAT = "healthadvisor-model/1"


def _node_to_dict(node):
    if isinstance(node, Leaf):
        return {"leaf": True, "counts": dict(sorted(node.counts.items()))}
    return {
        "split": node.split_attribute,
        "counts": dict(sorted(node.counts.items())),
        "children": {v: _node_to_dict(c) for v, c in sorted(node.children.items())},
    }


def _node_from_dict(d):
    if d.get("leaf"):
        return Leaf(dict(d["counts"]))
    return Internal(d["split"], {v: _node_from_dict(c) for v, c in d["children"].items()}, dict(d["counts"]))


def model_to_dict(tree, oner=None):
    doc = {
        "format": FORMAT,
        "schema": tree.schema.to_dict(),
        "config": {
            "max_depth": tree.config.max_depth,
            "min_gain": tree.config.min_gain,
            "laplace": tree.config.laplace,
        },
        "metadata": {"n_rows": tree.n_rows, "depth": tree.depth, "n_leaves": tree.n_leaves},
        "tree": _node_to_dict(tree.root),
    }
    if oner is not None:
        doc["baseline_oner"] = {
            "attribute": oner.attribute,
            "rule": dict(sorted(oner.rule.items())),
            "default": oner.default,
            "training_error": oner.training_error,
        }
    return doc


def dumps_model(tree, oner=None):
    return json.dumps(model_to_dict(tree, oner), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save_model(path, tree, oner=None):
    Path(path).write_text(dumps_model(tree, oner), encoding="utf-8")


def load_model(path):
    """Return (DecisionTree, OneRModel or None)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed model document: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ValidationError(f"not a {FORMAT} document", path=path)
    try:
        schema = AttributeSchema.from_dict(doc["schema"])
        tree = DecisionTree(
            _node_from_dict(doc["tree"]),
            schema,
            TreeConfig(**doc["config"]),
            doc["metadata"]["n_rows"],
        )
        oner = None
        if "baseline_oner" in doc:
            b = doc["baseline_oner"]
            oner = OneRModel(b["attribute"], b["rule"], b["default"], schema, b["training_error"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"incomplete model document: {exc}", path=path) from None
    return tree, oner
