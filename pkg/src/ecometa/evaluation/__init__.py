"""Human evaluation: form generation, rating ingestion, agreement statistics."""

from ecometa.evaluation.kappa import randolph_kappa
from ecometa.evaluation.models import BundleRejected, RatingBundle, parse_bundle
from ecometa.evaluation.aggregate import QualityReport, aggregate_ratings
from ecometa.evaluation.form import FormPayload, build_payload, generate_form, load_ui_bundle

__all__ = [
    "BundleRejected",
    "FormPayload",
    "QualityReport",
    "RatingBundle",
    "aggregate_ratings",
    "build_payload",
    "generate_form",
    "load_ui_bundle",
    "parse_bundle",
    "randolph_kappa",
]
