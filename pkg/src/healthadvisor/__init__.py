"""Risk prediction, concept-graph mapping and wearable recommendation for health profiles."""
from importlib import resources

__version__ = "0.1.0"


def data_path(name=""):
    """Path of a bundled fixture file (``data/<name>``)."""
    return resources.files("healthadvisor").joinpath("data", name) if name else resources.files("healthadvisor").joinpath("data")
