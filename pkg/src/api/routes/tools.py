"""Sandbox tool endpoint: the same four searches experts call."""

from fastapi import APIRouter, Depends, HTTPException, Request, status

from src.api.dependencies import get_sandbox
from src.api.schemas.responses import ToolResponse
from src.sandbox import TOOL_SPECS, Sandbox, describe_results, execute_tool

router = APIRouter(prefix="/api/v1", tags=["sandbox"])

# Query parameter names per tool, in signature order
QUERY_PARAMETERS: dict[str, tuple[str, ...]] = {
    "flight_search": ("origin", "destination", "date"),
    "hotel_search": ("city",),
    "resturant_search": ("city",),
    "attraction_search": ("city",),
}


@router.get("/tools/{tool_name}", response_model=ToolResponse)
def run_tool(
    tool_name: str,
    request: Request,
    sandbox: Sandbox = Depends(get_sandbox),
) -> ToolResponse:
    """
    Run one sandbox tool.

    Examples:
        GET /api/v1/tools/flight_search?origin=Boston&destination=Rome&date=2022-03-10
        GET /api/v1/tools/hotel_search?city=Rome

    Raises:
        HTTPException 404: Unknown tool
        HTTPException 400: Missing query parameter (bad dates are ToolArgumentError, also 400)
    """
    if tool_name not in TOOL_SPECS:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND,
            detail={
                "error": "unknown_tool",
                "message": f"unknown tool {tool_name!r}; expected one of {sorted(TOOL_SPECS)}",
            },
        )

    names = QUERY_PARAMETERS[tool_name]
    missing = [name for name in names if not request.query_params.get(name)]
    if missing:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail={
                "error": "missing_parameters",
                "message": f"{tool_name} requires query parameters: {', '.join(missing)}",
            },
        )

    arguments = [request.query_params[name] for name in names]
    records = execute_tool(sandbox, tool_name, arguments)
    return ToolResponse(
        tool=tool_name,
        arguments=arguments,
        count=len(records),
        records=[record.model_dump(mode="json") for record in records],
        text=describe_results(tool_name, arguments, records),
    )
