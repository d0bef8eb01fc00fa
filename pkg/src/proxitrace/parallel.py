"""Process-pool variants of the two heavy per-contact operations.

The six statement equations behind a group signature are independent,
so their proof responses and their verification products can each be
fanned out to worker processes.  Randomness is drawn and committed in
the parent, which makes the pooled signing path bit-identical to the
serial one for the same rng state; pooled verification returns the
same verdict as the serial verifier by construction.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor

from .csig import CsigSignature
from .gsig import (GroupSignature, GroupVerifKey, ProxyCredential, X_VARS,
                   Y_VARS, statement_equations)
from .groups import GroupElement
from .niwi import equation_response, verification_pairs
from .rng import DeterministicRng
from . import protocol as _protocol

_WORKER_VK: GroupVerifKey | None = None


def _init_worker(vk: GroupVerifKey) -> None:
    global _WORKER_VK
    _WORKER_VK = vk


def _response_job(args):
    crs, eq, wx, wy, rand_x, rand_y = args
    return equation_response(crs, eq, wx, wy, rand_x, rand_y)


def _verify_job(args):
    m_point, proof, index, use_tables = args
    vk = _WORKER_VK
    equations = statement_equations(vk, m_point)
    pairs, target = verification_pairs(vk.crs, equations[index], proof, index)
    if not use_tables:
        return vk.ctx.pair_check(pairs, target=target)
    pre = vk.precomputed_tables()
    dyn, tab = [], []
    for x_el, y_el in pairs:
        table = pre.get(x_el)
        if table is not None:
            tab.append((table, y_el))
        else:
            dyn.append((x_el, y_el))
    return vk.ctx.pair_check(dyn, target=target, tables=tab)


class ParallelEngine:
    """Worker pool bound to one group verification key.

    Workers receive a cache-free copy of the key once at startup and
    rebuild equation sets and pairing tables locally, so per-call job
    payloads stay small.
    """

    def __init__(self, vk: GroupVerifKey, max_workers: int | None = None):
        self.vk = vk
        clean = GroupVerifKey(ctx=vk.ctx, pk1=vk.pk1, pk2=vk.pk2, crs=vk.crs)
        self.workers = max_workers or min(6, os.cpu_count() or 1)
        self._pool = ProcessPoolExecutor(
            max_workers=self.workers,
            mp_context=multiprocessing.get_context("fork"),
            initializer=_init_worker, initargs=(clean,))

    # response_map contract from niwi_prove
    def _response_map(self, crs, equations, witness, rand_x, rand_y):
        jobs = []
        for eq in equations:
            wx = {name: witness.x[name] for name in eq.x_names}
            wy = {name: witness.y[name] for name in eq.y_names}
            rx = {name: rand_x[name] for name in eq.x_names}
            ry = {name: rand_y[name] for name in eq.y_names}
            jobs.append((crs, eq, wx, wy, rx, ry))
        return list(self._pool.map(_response_job, jobs))

    def p_sign(self, cred: ProxyCredential, id_point: GroupElement, ps: int,
               rng: DeterministicRng
               ) -> tuple[GroupElement, CsigSignature, GroupSignature]:
        return _protocol.p_sign(self.vk, cred, id_point, ps, rng,
                                response_map=self._response_map)

    def sig_verify(self, m_point: GroupElement, sig: GroupSignature,
                   precomputed: bool = False) -> bool:
        vk = self.vk
        ctx = vk.ctx
        if m_point.group is not ctx.g2_group:
            raise ValueError("message must be a second-group element")
        proof = sig.proof
        if set(proof.c) != set(X_VARS) or set(proof.d) != set(Y_VARS):
            raise ValueError("commitment table does not match the statement shape")
        if len(proof.pairs) != 6:
            raise ValueError("response count does not match equation count")
        for pi, theta in proof.pairs:
            if pi.group is not ctx.g2_group or theta.group is not ctx.g1_group:
                raise ValueError("response pair in wrong groups")
        for el in proof.c.values():
            if el.group is not ctx.g1_group:
                raise ValueError("commitment in wrong group")
        for el in proof.d.values():
            if el.group is not ctx.g2_group:
                raise ValueError("commitment in wrong group")
        jobs = [(m_point, proof, i, precomputed) for i in range(6)]
        return all(self._pool.map(_verify_job, jobs))

    def close(self) -> None:
        self._pool.shutdown(wait=True)

    def __enter__(self) -> "ParallelEngine":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
