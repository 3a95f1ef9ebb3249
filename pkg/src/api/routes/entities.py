"""Grounding check endpoint."""

from fastapi import APIRouter, Depends, Query

from src.api.dependencies import get_sandbox
from src.api.schemas.responses import EntityResponse
from src.sandbox import EntityKind, Sandbox, ToolRecord

router = APIRouter(prefix="/api/v1", tags=["sandbox"])


def _find(sandbox: Sandbox, kind: EntityKind, name: str, city: str | None) -> ToolRecord | None:
    if kind is EntityKind.FLIGHT:
        return sandbox.find_flight(name)
    if kind is EntityKind.HOTEL:
        return sandbox.find_hotel(name, city)
    if kind is EntityKind.RESTAURANT:
        return sandbox.find_restaurant(name, city)
    if kind is EntityKind.ATTRACTION:
        return sandbox.find_attraction(name, city)
    return None


@router.get("/entities/{kind}/{name}", response_model=EntityResponse)
def check_entity(
    kind: EntityKind,
    name: str,
    city: str | None = Query(default=None, description="Restrict the record lookup to a city"),
    sandbox: Sandbox = Depends(get_sandbox),
) -> EntityResponse:
    """Tell whether a name exists in the sandbox, returning the matching record if any."""
    record = _find(sandbox, kind, name, city)
    return EntityResponse(
        kind=kind,
        name=name,
        exists=sandbox.entity_exists(kind, name),
        record=record.model_dump(mode="json") if record is not None else None,
    )
