"""FastAPI service exposing every command over HTTP.

The expensive part of any request is the prime table, so the app keeps one
table per process and grows it on demand; finished tables are immutable and
shared by concurrent requests.
"""

from __future__ import annotations

import os
import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, constellation, merges, phi3, products, verify
from ..errors import CapExceededError, TableRangeError
from ..sieve import DEFAULT_CAP, PrimeTable, load_cache, save_cache, sieve_range
from . import models


class TableManager:
    """Grow-on-demand owner of the process-wide prime table."""

    def __init__(self, cap: int = DEFAULT_CAP, cache_path: Optional[str] = None):
        self.cap = cap
        self._lock = threading.Lock()
        self._table: Optional[PrimeTable] = None
        if cache_path and os.path.exists(cache_path):
            self._table = load_cache(cache_path, cap=cap)

    @property
    def limit(self) -> int:
        return self._table.limit if self._table is not None else 0

    def get(self, min_limit: int, threads: int = 1) -> PrimeTable:
        if min_limit > self.cap:
            raise CapExceededError("sieve limit", min_limit, self.cap)
        with self._lock:
            if self._table is None or self._table.limit < min_limit:
                target = max(min_limit, 1_000_000)
                if self._table is not None:
                    target = max(target, 2 * self._table.limit)
                self._table = sieve_range(
                    0, min(target, self.cap), threads=threads, cap=self.cap
                )
            return self._table

    def adopt(self, table: PrimeTable) -> None:
        with self._lock:
            if self._table is None or table.limit > self._table.limit:
                self._table = table


def _tuple_row(report, gap_set=None) -> models.TupleRow:
    e = report.elements
    return models.TupleRow(
        x=report.x,
        e1=e[0], e2=e[1], e3=e[2], e4=e[3], e5=e[4], e6=e[5], e7=e[6], e8=e[7],
        mask="".join("1" if b else "0" for b in report.prime_mask),
        count=report.prime_count,
        gaps=sorted(gap_set.gaps) if gap_set is not None else None,
    )


def create_app(cap: int = DEFAULT_CAP, cache_path: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="wheel7", version=__version__)
    tables = TableManager(cap=cap, cache_path=cache_path)
    app.state.tables = tables

    @app.exception_handler(ValueError)
    async def _bad_argument(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content=models.ErrorBody(error="argument", detail=str(exc)).model_dump(),
        )

    @app.exception_handler(CapExceededError)
    async def _cap_exceeded(request: Request, exc: CapExceededError):
        return JSONResponse(
            status_code=413,
            content=models.ErrorBody(error="cap_exceeded", detail=str(exc)).model_dump(),
        )

    @app.exception_handler(TableRangeError)
    async def _table_range(request: Request, exc: TableRangeError):
        return JSONResponse(
            status_code=413,
            content=models.ErrorBody(error="table_range", detail=str(exc)).model_dump(),
        )

    @app.get("/", response_model=models.ServiceInfo)
    def info():
        return models.ServiceInfo(
            name="wheel7", version=__version__, table_limit=tables.limit,
            table_cap=tables.cap,
        )

    @app.post("/sieve", response_model=models.SieveResponse)
    def sieve(req: models.SieveRequest):
        from_cache = False
        table = None
        if req.cache and os.path.exists(req.cache):
            cached = load_cache(req.cache, cap=tables.cap)
            if cached.limit >= req.limit:
                table = cached
                from_cache = True
                tables.adopt(cached)
        if table is None:
            table = tables.get(req.limit, threads=req.threads)
            if req.cache and not from_cache:
                save_cache(table, req.cache)
        sevens = None
        if req.count_sevens and req.limit >= 30:
            sevens = constellation.count_sevens(req.limit, table)
        stats = models.SieveStats(
            limit=req.limit,
            blocks=req.limit // 30 + 1,
            prime_count=table.prime_count(req.limit),
            seven_blocks=sevens,
            from_cache=from_cache,
        )
        return models.SieveResponse(rows=[stats])

    @app.post("/tuples", response_model=models.TuplesResponse)
    def tuples(req: models.TuplesRequest):
        if req.x_lo > req.x_hi:
            raise ValueError("need x_lo <= x_hi")
        table = tables.get(30 * req.x_hi + 29, threads=req.threads)
        rows = []
        for x in range(req.x_lo, req.x_hi + 1):
            gap_set = constellation.gap_pairs(x, table) if req.gaps else None
            rows.append(_tuple_row(constellation.tuple_report(x, table), gap_set))
        return models.TuplesResponse(rows=rows)

    @app.post("/pi7", response_model=models.Pi7Response)
    def pi7(req: models.Pi7Request):
        table = tables.get(req.s, threads=req.threads)
        count = constellation.count_sevens(req.s, table)
        xs = None
        rows = []
        if req.list_xs:
            last_block = req.s // 30 - 1
            xs = constellation.enumerate_sevens(last_block, table)
            rows = [_tuple_row(constellation.tuple_report(x, table)) for x in xs]
        return models.Pi7Response(s=req.s, count=count, xs=xs, rows=rows)

    @app.post("/phi3", response_model=models.Phi3Response)
    def phi3_cmd(req: models.Phi3Request):
        pairs = phi3.factorize(req.m)
        formula = phi3.phi3_formula(req.m)
        want_oracle = req.oracle
        if want_oracle is None:
            want_oracle = req.m <= phi3.BRUTEFORCE_CAP
        oracle = phi3.phi3_bruteforce(req.m) if want_oracle else None
        row = models.Phi3Row(
            m=req.m,
            factorization="*".join(
                f"{p}^{k}" if k > 1 else str(p) for p, k in pairs
            ) or "1",
            formula=formula,
            oracle=oracle,
            match=None if oracle is None else oracle == formula,
        )
        return models.Phi3Response(rows=[row])

    @app.post("/s7", response_model=models.S7Response)
    def s7(req: models.S7Request):
        count = products.s7_count(req.n)
        want_oracle = req.oracle
        if want_oracle is None:
            want_oracle = req.n <= products.ORACLE_MAX_INDEX
        oracle = products.s7_construction_oracle(req.n) if want_oracle else None
        row = models.S7Row(
            n=req.n,
            modulus=str(products.s7_modulus(req.n)),
            count=str(count),
            oracle=None if oracle is None else str(oracle),
            match=None if oracle is None else oracle == count,
        )
        return models.S7Response(rows=[row])

    @app.post("/density", response_model=models.DensityResponse)
    def density(req: models.DensityRequest):
        if req.n_lo > req.n_hi:
            raise ValueError("need n_lo <= n_hi")
        rows = []
        for n in range(req.n_lo, req.n_hi + 1):
            rows.append(
                models.DensityRow(
                    n=n,
                    p_n3=products.prime_at(n + 3),
                    density_log=products.density_upto(n + 3).log,
                    ratio=products.ratio(n).value(),
                    recurrence_factor=products.recurrence_factor(n),
                    growth_flag=products.check_prime_growth(n),
                )
            )
        return models.DensityResponse(rows=rows)

    @app.post("/merge", response_model=models.MergeResponse)
    def merge(req: models.MergeRequest):
        result = merges.merge_count(req.m, req.n)
        want_oracle = req.oracle
        if want_oracle is None:
            want_oracle = req.m + req.n <= merges.ENUMERATE_CAP
        oracle = merges.merge_enumerate_oracle(req.m, req.n) if want_oracle else None
        row = models.MergeRow(
            m=req.m,
            n=req.n,
            count=str(result.count),
            spacing=f"{result.spacing.numerator}/{result.spacing.denominator}",
            oracle=None if oracle is None else str(oracle),
            match=None if oracle is None else oracle == result.count,
        )
        return models.MergeResponse(rows=[row])

    @app.post("/verify", response_model=models.VerifyResponse)
    def verify_cmd(req: models.VerifyRequest):
        if req.n_lo > req.n_hi:
            raise ValueError("need n_lo <= n_hi")
        if req.density:
            rows = []
            for n in range(max(req.n_lo, 2), req.n_hi + 1):
                dc = verify.density_comparison(n)
                rows.append(
                    models.DensityCompareRow(
                        n=dc.n,
                        even_density=dc.even_density,
                        avg_density_log=dc.avg_density_log.log,
                        k_n4=dc.k_n4,
                        sift_budget=dc.sift_budget,
                        dominance=dc.dominance,
                    )
                )
            return models.VerifyResponse(rows=rows)
        p_top = products.prime_at(req.n_hi + 4)
        table = tables.get(p_top * p_top, threads=req.threads)
        rows = [
            models.VerifyRow(**vars(r))
            for r in verify.scan_main(req.n_lo, req.n_hi, table)
        ]
        failures = sum(1 for r in rows if not r.holds)
        return models.VerifyResponse(
            rows=rows,
            summary=models.VerifySummary(
                all_hold=failures == 0, num_rows=len(rows), num_failures=failures
            ),
        )

    @app.post("/lemma43", response_model=models.Lemma43Response)
    def lemma43(req: models.Lemma43Request):
        if req.n_lo > req.n_hi or req.r_lo > req.r_hi:
            raise ValueError("need n_lo <= n_hi and r_lo <= r_hi")
        bound = products.prime_at(req.n_hi + req.r_hi + 2)
        table = tables.get(bound)
        if req.n_lo == req.n_hi and req.r_lo == req.r_hi:
            result = verify.lemma43_check(req.n_lo, req.r_lo, table)
            rows = [models.Lemma43Row(**vars(result))]
            summary = models.Lemma43Summary(
                checked=1, num_failures=0 if result.holds else 1,
                all_hold=result.holds,
            )
            return models.Lemma43Response(rows=rows, summary=summary)
        sweep = verify.lemma43_sweep(req.n_lo, req.n_hi, req.r_lo, req.r_hi, table)
        rows = []
        if sweep.first_failure is not None:
            rows.append(models.Lemma43Row(**vars(sweep.first_failure)))
        return models.Lemma43Response(
            rows=rows,
            summary=models.Lemma43Summary(
                checked=sweep.checked, num_failures=sweep.num_failures,
                all_hold=sweep.all_hold,
            ),
        )

    @app.post("/crossover", response_model=models.CrossoverResponse)
    def crossover(req: models.CrossoverRequest):
        result = products.find_n0(req.a, req.n_max)
        return models.CrossoverResponse(
            rows=[
                models.CrossoverRow(
                    a=result.a, n_max=result.n_max, n0=result.n0,
                    first_stable=result.first_stable,
                )
            ]
        )

    return app


app = create_app()
