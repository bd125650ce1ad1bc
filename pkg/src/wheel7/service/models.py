"""Request/response models for the wheel7 service.

Exact big integers (merge counts, S7 values) travel as decimal strings so
responses stay safe for JSON parsers with 53-bit number limits.
"""

from __future__ import annotations

from typing import List, Optional, Union

from pydantic import BaseModel, Field


class ServiceInfo(BaseModel):
    name: str
    version: str
    table_limit: int
    table_cap: int


class SieveRequest(BaseModel):
    limit: int = Field(..., ge=0, description="Sieve and mark all primes <= limit")
    threads: int = Field(1, ge=1, le=64)
    cache: Optional[str] = Field(None, description="WHL30SV1 cache file to load/save")
    count_sevens: bool = Field(False, description="Also count seven-prime blocks")


class SieveStats(BaseModel):
    limit: int
    blocks: int
    prime_count: int
    seven_blocks: Optional[int] = None
    from_cache: bool = False


class SieveResponse(BaseModel):
    rows: List[SieveStats]


class TupleRow(BaseModel):
    x: int
    e1: int
    e2: int
    e3: int
    e4: int
    e5: int
    e6: int
    e7: int
    e8: int
    mask: str = Field(..., pattern="^[01]{8}$")
    count: int = Field(..., ge=0, le=8)
    gaps: Optional[List[int]] = None


class TuplesRequest(BaseModel):
    x_lo: int = Field(..., ge=0)
    x_hi: int = Field(..., ge=0)
    gaps: bool = False
    threads: int = Field(1, ge=1, le=64)


class TuplesResponse(BaseModel):
    rows: List[TupleRow]


class Pi7Request(BaseModel):
    s: int = Field(..., ge=30)
    list_xs: bool = True
    threads: int = Field(1, ge=1, le=64)


class Pi7Response(BaseModel):
    s: int
    count: int
    xs: Optional[List[int]] = None
    rows: List[TupleRow]


class Phi3Request(BaseModel):
    m: int = Field(..., ge=1)
    oracle: Optional[bool] = Field(
        None, description="Force the brute-force cross-check on or off"
    )


class Phi3Row(BaseModel):
    m: int
    factorization: str
    formula: int
    oracle: Optional[int] = None
    match: Optional[bool] = None


class Phi3Response(BaseModel):
    rows: List[Phi3Row]


class S7Request(BaseModel):
    n: int = Field(..., ge=5)
    oracle: Optional[bool] = None


class S7Row(BaseModel):
    n: int
    modulus: str
    count: str
    oracle: Optional[str] = None
    match: Optional[bool] = None


class S7Response(BaseModel):
    rows: List[S7Row]


class DensityRequest(BaseModel):
    n_lo: int = Field(..., ge=2)
    n_hi: int = Field(..., ge=2)


class DensityRow(BaseModel):
    n: int
    p_n3: int
    density_log: float
    ratio: float
    recurrence_factor: float
    growth_flag: bool


class DensityResponse(BaseModel):
    rows: List[DensityRow]


class MergeRequest(BaseModel):
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    oracle: Optional[bool] = None


class MergeRow(BaseModel):
    m: int
    n: int
    count: str
    spacing: str
    oracle: Optional[str] = None
    match: Optional[bool] = None


class MergeResponse(BaseModel):
    rows: List[MergeRow]


class VerifyRequest(BaseModel):
    n_lo: int = Field(..., ge=1)
    n_hi: int = Field(..., ge=1)
    threads: int = Field(1, ge=1, le=64)
    density: bool = Field(
        False, description="Emit density-comparison rows instead of bound rows"
    )


class VerifyRow(BaseModel):
    n: int
    p_n4: int
    s: int
    bound: int
    pi7: int
    holds: bool
    margin: int


class DensityCompareRow(BaseModel):
    n: int
    even_density: int
    avg_density_log: float
    k_n4: int
    sift_budget: int
    dominance: bool


class VerifySummary(BaseModel):
    all_hold: bool
    num_rows: int
    num_failures: int


class VerifyResponse(BaseModel):
    rows: List[Union[VerifyRow, DensityCompareRow]]
    summary: Optional[VerifySummary] = None


class Lemma43Request(BaseModel):
    n_lo: int = Field(..., ge=12)
    n_hi: int = Field(..., ge=12)
    r_lo: int = Field(1, ge=1)
    r_hi: int = Field(1, ge=1)


class Lemma43Row(BaseModel):
    n: int
    r: int
    lhs: int
    rhs: int
    holds: bool


class Lemma43Summary(BaseModel):
    checked: int
    num_failures: int
    all_hold: bool


class Lemma43Response(BaseModel):
    rows: List[Lemma43Row]
    summary: Lemma43Summary


class CrossoverRequest(BaseModel):
    a: int = Field(..., ge=1)
    n_max: int = Field(..., ge=2)


class CrossoverRow(BaseModel):
    a: int
    n_max: int
    n0: Optional[int] = None
    first_stable: Optional[int] = None


class CrossoverResponse(BaseModel):
    rows: List[CrossoverRow]


class ErrorBody(BaseModel):
    error: str
    detail: str
