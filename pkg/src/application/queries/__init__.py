"""Application queries package."""
from .get_reconfig_bound_query import GetReconfigBoundQuery, GetReconfigBoundQueryHandler, ReconfigBound
from .get_worked_examples_query import (
    EXPECTED_WORKED_EXAMPLES,
    ExpectedValue,
    GetWorkedExamplesQuery,
    GetWorkedExamplesQueryHandler,
)

__all__ = [
    "EXPECTED_WORKED_EXAMPLES",
    "ExpectedValue",
    "GetReconfigBoundQuery",
    "GetReconfigBoundQueryHandler",
    "GetWorkedExamplesQuery",
    "GetWorkedExamplesQueryHandler",
    "ReconfigBound",
]
