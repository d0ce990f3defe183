"""Schema, profiles and labeled datasets, plus the training CSV format."""
import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from healthadvisor.exceptions import DomainError, ValidationError

AGE_GROUPS = ("0-14", "15-24", "25-34", "35-44", "45-54", "55-64", "65-74", "75+")

ATTRIBUTES = (
    "age_group",
    "gender",
    "ethnicity",
    "state",
    "occupation",
    "marital_status",
    "prior_health_records",
)
CSV_HEADER = ("person_id",) + ATTRIBUTES + ("condition",)


@dataclass(frozen=True)
class AttributeSchema:
    attributes: tuple  # ((name, frozenset(values)), ...)
    class_names: tuple

    def __post_init__(self):
        names = [name for name, _ in self.attributes]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate attribute names in {names}")
        for name, values in self.attributes:
            if not values:
                raise DomainError(f"attribute {name!r} has no allowed values")
        if not self.class_names:
            raise DomainError("schema needs at least one class name")
        object.__setattr__(
            self, "attributes", tuple((n, frozenset(v)) for n, v in self.attributes)
        )
        object.__setattr__(self, "class_names", tuple(sorted(set(self.class_names))))

    @property
    def attribute_names(self):
        return tuple(name for name, _ in self.attributes)

    def allowed(self, attribute):
        for name, values in self.attributes:
            if name == attribute:
                return values
        raise DomainError(f"unknown attribute {attribute!r}")

    def to_dict(self):
        return {
            "attributes": [[n, sorted(v)] for n, v in self.attributes],
            "class_names": list(self.class_names),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(tuple((n, frozenset(v)) for n, v in d["attributes"]), tuple(d["class_names"]))


@dataclass(frozen=True)
class PersonProfile:
    values: Mapping[str, str]
    person_id: str = ""

    def __getitem__(self, attribute):
        return self.values[attribute]

    def check(self, schema):
        """Raise DomainError unless the profile carries exactly the schema's attributes."""
        expected = set(schema.attribute_names)
        got = set(self.values)
        if got != expected:
            raise DomainError(
                f"profile {self.person_id!r} attributes {sorted(got)} do not match schema {sorted(expected)}"
            )
        for name, value in self.values.items():
            if not isinstance(value, str) or not value:
                raise DomainError(f"profile {self.person_id!r}: empty value for {name!r}")


@dataclass(frozen=True)
class LabeledDataset:
    schema: AttributeSchema
    rows: tuple = field(default=())  # ((PersonProfile, label), ...)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        classes = set(self.schema.class_names)
        for profile, label in self.rows:
            profile.check(self.schema)
            if label not in classes:
                raise DomainError(f"label {label!r} not in schema class names")
            for name, allowed in self.schema.attributes:
                if profile[name] not in allowed:
                    raise DomainError(f"value {profile[name]!r} not allowed for {name!r}")

    def __len__(self):
        return len(self.rows)

    @property
    def labels(self):
        return [label for _, label in self.rows]


def infer_schema(profiles, labels, attributes=ATTRIBUTES, fixed_values=None):
    """Allowed values are the observed values, widened by ``fixed_values`` per attribute."""
    fixed_values = fixed_values or {}
    attrs = []
    for name in attributes:
        observed = {p[name] for p in profiles}
        attrs.append((name, frozenset(observed | set(fixed_values.get(name, ())))))
    return AttributeSchema(tuple(attrs), tuple(sorted(set(labels))))


def dataset_from_records(records, attributes=ATTRIBUTES):
    """Build a dataset from dicts holding the attribute columns plus ``condition``."""
    profiles, labels = [], []
    for i, rec in enumerate(records):
        values = {name: rec[name] for name in attributes}
        profiles.append(PersonProfile(values, str(rec.get("person_id", i))))
        labels.append(rec["condition"])
    if not profiles:
        raise DomainError("dataset has no rows")
    fixed = {"age_group": AGE_GROUPS} if "age_group" in attributes else None
    schema = infer_schema(profiles, labels, attributes, fixed)
    return LabeledDataset(schema, tuple(zip(profiles, labels)))


def _read_rows(path, header, optional=()):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    except UnicodeDecodeError as exc:
        raise ValidationError(f"not valid UTF-8 ({exc.reason})", path=path) from None
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        got = next(reader)
    except StopIteration:
        raise ValidationError("empty file, expected a header", path=path, line=1) from None
    except csv.Error as exc:
        raise ValidationError(str(exc), path=path, line=1) from None
    required = [h for h in header if h not in optional]
    if not (list(got) == list(header) or list(got) == required):
        raise ValidationError(f"bad header {got}, expected {list(header)}", path=path, line=1)
    rows = []
    while True:
        try:
            row = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            raise ValidationError(str(exc), path=path, line=reader.line_num) from None
        if not row:
            continue
        if len(row) != len(got):
            raise ValidationError(
                f"expected {len(got)} fields, got {len(row)}", path=path, line=reader.line_num
            )
        rec = dict(zip(got, row))
        for key, value in rec.items():
            if key != "person_id" and not value.strip():
                raise ValidationError(f"empty value for {key!r}", path=path, line=reader.line_num)
        rows.append((reader.line_num, rec))
    return rows


def _check_age(rec, path, line):
    if rec["age_group"] not in AGE_GROUPS:
        raise ValidationError(
            f"age_group {rec['age_group']!r} not one of {', '.join(AGE_GROUPS)}", path=path, line=line
        )


def read_dataset(path):
    """Read the training CSV; raises ValidationError carrying the offending line number."""
    rows = _read_rows(path, CSV_HEADER)
    if not rows:
        raise ValidationError("no data rows", path=path, line=2)
    for line, rec in rows:
        _check_age(rec, path, line)
    return dataset_from_records([rec for _, rec in rows])


def read_profiles(path):
    """Read profiles from a CSV with the training header; ``condition`` may be omitted."""
    rows = _read_rows(path, CSV_HEADER, optional=("condition",))
    if not rows:
        raise ValidationError("no profiles", path=path, line=2)
    profiles = []
    for line, rec in rows:
        _check_age(rec, path, line)
        values = {name: rec[name] for name in ATTRIBUTES}
        profiles.append(PersonProfile(values, rec["person_id"] or f"row{line}"))
    return profiles


def write_dataset(dataset, path_or_file, person_ids=None):
    own = isinstance(path_or_file, (str, Path))
    fh = open(path_or_file, "w", encoding="utf-8", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for i, (profile, label) in enumerate(dataset.rows):
            pid = person_ids[i] if person_ids is not None else (profile.person_id or str(i))
            writer.writerow([pid] + [profile[a] for a in ATTRIBUTES] + [label])
    finally:
        if own:
            fh.close()
