"""HTTP front end for the calculator: enumeration, evaluation, checks, tables.

Run with ``uvicorn hopfalg.service:app``.  All computation is exact and
stateless, so the service is safe to scale horizontally; the command line
talks to the same application in-process by default.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from hopfalg.calculator import (
    ENUM_FAMILIES,
    TABLES,
    UsageError,
    enumerate_family,
    evaluate,
    run_check,
    table,
)
from hopfalg.core import DegreeBoundError
from hopfalg.grammar import ParseError

app = FastAPI(
    title="hopfalg",
    description="Exact calculator for Hopf algebra structures on tensor and "
                "symmetric coalgebras: trees, braces, permutations and "
                "compositions.",
    version="0.1.0",
)


class EnumerateRequest(BaseModel):
    family: str = Field(description=f"one of {ENUM_FAMILIES}")
    n: int = Field(ge=1, description="size parameter of the family")
    connected: bool = False


class EnumerateResponse(BaseModel):
    family: str
    n: int
    connected: bool
    count: int
    items: list[str]


class EvalRequest(BaseModel):
    algebra: str
    expression: str
    maxdeg: int = Field(default=6, ge=1, le=10)
    context: dict | None = Field(
        default=None,
        description="optional structure data, e.g. a Lie algebra as "
                    "{'basis': [...], 'weights': [...], 'brackets': [...]}")


class Term(BaseModel):
    coeff: str
    key: str


class EvalResponse(BaseModel):
    algebra: str
    expression: str
    result: str
    terms: list[Term]
    arity: int | None = None


class CheckRequest(BaseModel):
    suite: str
    maxdeg: int | None = Field(default=None, ge=1, le=8)
    seed: int = 0


class CheckLine(BaseModel):
    id: str
    status: str
    witness: str = ""


class CheckResponse(BaseModel):
    suite: str
    passed: bool
    checks: list[CheckLine]


class TableRequest(BaseModel):
    name: str = Field(description=f"one of {TABLES}")


class TableRow(BaseModel):
    label: str
    values: list[int]
    expected: list[int]


class TableResponse(BaseModel):
    name: str
    rows: list[TableRow]
    note: str
    passed: bool


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (UsageError, ParseError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except DegreeBoundError as exc:
        raise HTTPException(status_code=400,
                            detail=f"degree bound: {exc}") from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/enumerate", response_model=EnumerateResponse)
def post_enumerate(request: EnumerateRequest) -> dict:
    return _guard(enumerate_family, request.family, request.n,
                  request.connected)


@app.post("/eval", response_model=EvalResponse)
def post_eval(request: EvalRequest) -> dict:
    return _guard(evaluate, request.algebra, request.expression,
                  request.maxdeg, request.context)


@app.post("/check", response_model=CheckResponse)
def post_check(request: CheckRequest) -> dict:
    return _guard(run_check, request.suite, request.maxdeg, request.seed)


@app.post("/table", response_model=TableResponse)
def post_table(request: TableRequest) -> dict:
    return _guard(table, request.name)
