"""Get reconfiguration bound query with handler."""

from dataclasses import dataclass
from typing import Optional

from neuroglia.core import OperationResult
from neuroglia.mediation import Query, QueryHandler

from application.services.request_executor import format_duration
from domain.exceptions import DomainError
from domain.regulation import UNBOUNDED, Rate, max_reconfig_period, sampling_heuristic_period


@dataclass(frozen=True)
class ReconfigBound:
    period: float
    text: str
    heuristic_period: Optional[float] = None
    heuristic_text: Optional[str] = None

    @property
    def unbounded(self) -> bool:
        return self.period == UNBOUNDED


@dataclass
class GetReconfigBoundQuery(Query[OperationResult[ReconfigBound]]):
    """Query for the longest reconfiguration period that keeps the entropy balance."""

    h_move: float
    rate: str
    margin: float = 1.0
    compromise_time: Optional[float] = None


class GetReconfigBoundQueryHandler(QueryHandler[GetReconfigBoundQuery, OperationResult[ReconfigBound]]):
    """Handle the bound computation; invalid flags are a bad request."""

    def __init__(self) -> None:
        super().__init__()

    async def handle_async(self, request: GetReconfigBoundQuery) -> OperationResult[ReconfigBound]:
        try:
            rate = Rate.parse(request.rate)
            period = max_reconfig_period(request.h_move, rate.value, request.margin)
            heuristic = (
                sampling_heuristic_period(request.compromise_time) if request.compromise_time is not None else None
            )
        except (DomainError, ValueError) as e:
            return self.bad_request(str(e))

        return self.ok(
            ReconfigBound(
                period=period,
                text=format_duration(period, rate.unit),
                heuristic_period=heuristic,
                heuristic_text=format_duration(heuristic, rate.unit) if heuristic is not None else None,
            )
        )
