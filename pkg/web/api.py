"""
FastAPI web server for the cobordism engine.

Provides REST endpoints for typechecking, evaluation, bounded proving,
TPTP emission and tangle polynomials. Every endpoint is a single
request/response computation.
"""

import os
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field, field_validator

# Import engine modules
import sys
sys.path.append(str(Path(__file__).parent.parent))
from src.axioms import standard_axioms
from src.khovanov import TABLE_REGISTRY, HomologyState, RankTable, tangle_polynomial
from src.loop_braid import cycle_notation, format_word, parse_word, to_permutations
from src.presets import PRESETS, resolve_equation
from src.prover import ProofTrace, SearchBudget, prove_equal
from src.reporter import exhausted_to_dict, polynomial_to_dict, trace_to_dict
from src.semantics import MODEL_REGISTRY, evaluate, load_model
from src.syntax import parse_term
from src.terms import format_object, typecheck
from src.tptp import emit, encode_equation


# Pydantic models for request validation
class TermRequest(BaseModel):
    """A term in the text syntax."""
    term: str = Field(min_length=1)
    model: str = "khovanov"


class ProveRequest(BaseModel):
    """Equation text or preset, with search limits."""
    equation: str = Field(min_length=1)
    max_states: int = Field(default=10_000, ge=1, le=100_000)
    size_factor: int = Field(default=4, ge=1, le=10)


class EmitRequest(BaseModel):
    equation: str = Field(min_length=1)
    axioms: List[str] = Field(default_factory=list)
    strict_tptp: bool = False


class StateRequest(BaseModel):
    r: int
    k: int
    rank: int = Field(ge=0)
    label: str = ''


class TableRequest(BaseModel):
    """Either a built-in table name or explicit states."""
    table: Optional[str] = None
    states: List[StateRequest] = Field(default_factory=list)

    @field_validator('states')
    @classmethod
    def validate_unique_states(cls, v):
        keys = [(s.r, s.k) for s in v]
        if len(keys) != len(set(keys)):
            raise ValueError('states must have distinct (r, k)')
        return v


class BraidRequest(BaseModel):
    word: str
    n: Optional[int] = Field(default=None, ge=1, le=64)


# Initialize FastAPI app
app = FastAPI(
    title="Cobordism Engine API",
    description="REST API for open-closed cobordism terms, proofs and invariants",
    version="0.1.0"
)

# Configure CORS
cors_origins = os.getenv("CORS_ORIGINS", "*").split(",")
app.add_middleware(
    CORSMiddleware,
    allow_origins=cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/api/defaults")
async def get_defaults():
    """Available presets, models, tables and rule names."""
    return {
        "presets": sorted(PRESETS),
        "models": sorted(MODEL_REGISTRY),
        "tables": ["bar-natan", "khovanov"],
        "rules": [rule.name for rule in standard_axioms()],
    }


@app.post("/api/check")
async def check_term(request: TermRequest):
    try:
        dom, cod = typecheck(parse_term(request.term))
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return {"dom": format_object(dom), "cod": format_object(cod)}


@app.post("/api/evaluate")
async def evaluate_term(request: TermRequest):
    """Evaluate a term; matrix entries are exact fractions as strings."""
    if request.model not in MODEL_REGISTRY:
        raise HTTPException(status_code=400, detail=f"Model '{request.model}' not found")
    try:
        value = evaluate(parse_term(request.term), load_model(request.model))
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    matrix = value.matrix
    return {
        "dom": format_object(value.dom),
        "cod": format_object(value.cod),
        "matrix": [[str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)],
    }


@app.post("/api/prove")
async def prove(request: ProveRequest):
    try:
        eq = resolve_equation(request.equation)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    result = prove_equal(eq, SearchBudget(request.max_states, request.size_factor))
    if isinstance(result, ProofTrace):
        return trace_to_dict(result)
    return exhausted_to_dict(result)


@app.post("/api/oracle")
async def oracle(request: ProveRequest):
    try:
        eq = resolve_equation(request.equation)
        verdicts: Dict[str, bool] = {}
        for name in sorted(MODEL_REGISTRY):
            model = load_model(name)
            verdicts[name] = evaluate(eq.lhs, model) == evaluate(eq.rhs, model)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return {"equal": all(verdicts.values()), "models": verdicts}


@app.post("/api/tptp")
async def emit_tptp(request: EmitRequest):
    try:
        eq = resolve_equation(request.equation)
        rules = [r for r in standard_axioms() if r.name in request.axioms]
        problem = encode_equation(eq, rules, strict_tptp=request.strict_tptp)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return {"problem": emit(problem), "formulas": len(problem.formulas)}


@app.post("/api/khovanov")
async def khovanov(request: TableRequest):
    try:
        if request.states:
            table = RankTable('request', [HomologyState(s.r, s.k, s.rank, s.label)
                                          for s in request.states])
        else:
            name = request.table or 'bar-natan'
            if name not in TABLE_REGISTRY:
                raise ValueError(f"unknown table '{name}'")
            table = TABLE_REGISTRY[name]()
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    data = {"table": table.name}
    data.update(polynomial_to_dict(tangle_polynomial(table)))
    return data


@app.post("/api/braid")
async def braid(request: BraidRequest):
    try:
        word = parse_word(request.word, request.n).reduced()
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return {"n": word.n, "reduced": format_word(word),
            "permutation": cycle_notation(to_permutations(word))}


if __name__ == "__main__":
    import uvicorn
    port = int(os.getenv("PORT", 8000))
    uvicorn.run(app, host="0.0.0.0", port=port)
