"""Embedded CDCL SAT solver and an exhaustive oracle.

The CDCL core is a compact MiniSat-style design: two watched literals,
first-UIP learning with local clause minimization, VSIDS branching over an
indexed binary heap, phase saving, geometric restarts and LBD-based
deletion of learnt clauses. Internally a literal ``+v`` / ``-v`` is stored
as ``2v`` / ``2v+1`` so negation is ``lit ^ 1``.

Only a completed search may answer UNSAT; running out of a conflict or time
budget yields ``INDETERMINATE``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .cnf import CnfInstance, eval_model


class Outcome(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    INDETERMINATE = "INDETERMINATE"


@dataclass
class SolverConfig:
    seed: int = 0
    conflict_budget: Optional[int] = None
    time_budget: Optional[float] = None  # seconds
    var_decay: float = 0.95
    clause_decay: float = 0.999
    restart_first: int = 100  # conflicts before the first restart
    restart_factor: float = 1.5
    learnt_ratio: float = 0.5  # initial learnt limit as a fraction of the input clauses
    learnt_growth: float = 1.1
    keep_lbd: int = 2  # learnt clauses with LBD <= this are never deleted
    random_freq: float = 0.0  # probability of a random decision


@dataclass
class SolverResult:
    outcome: Outcome
    model: Optional[list] = None  # model[v] for v in 1..num_vars; index 0 unused
    stats: dict = field(default_factory=dict)

    @property
    def is_sat(self) -> bool:
        return self.outcome is Outcome.SAT

    @property
    def is_unsat(self) -> bool:
        return self.outcome is Outcome.UNSAT


class SolverError(RuntimeError):
    """Internal inconsistency (e.g. a SAT model that fails verification)."""


def solve(inst: CnfInstance, config: Optional[SolverConfig] = None) -> SolverResult:
    res = _Cdcl(inst, config or SolverConfig()).run()
    if res.outcome is Outcome.SAT:
        ok, bad = eval_model(inst, res.model)
        if not ok:
            raise SolverError(f"model violates clause #{bad}")
    return res


class _Cdcl:
    def __init__(self, inst: CnfInstance, cfg: SolverConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        n = inst.num_vars
        self.n = n
        self.val = [0] * (2 * n + 2)  # per literal: 1 true, -1 false, 0 unassigned
        self.level = [0] * (n + 1)
        self.reason = [-1] * (n + 1)
        self.polarity = [1] * (n + 1)  # saved phase; 1 means "assign false"
        self.activity = [self.rng.random() * 1e-5 if cfg.seed else 0.0 for _ in range(n + 1)]
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.seen = [False] * (n + 1)
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.watches = [[] for _ in range(2 * n + 2)]
        self.clauses = []  # cref -> list of literals, None once deleted
        self.learnt_info = {}  # cref -> [lbd, activity]
        self.stats = dict(decisions=0, propagations=0, conflicts=0, restarts=0,
                          learnt=0, deleted=0)
        self.heap = []
        self.heap_idx = [-1] * (n + 1)
        for v in range(1, n + 1):
            self._heap_insert(v)
        self.ok = True
        self._load(inst.clauses)

    # ------------------------------------------------------------ setup

    def _load(self, clauses):
        seen = set()
        for clause in clauses:
            key = frozenset(clause)
            if key in seen:
                continue
            seen.add(key)
            lits = [2 * l if l > 0 else -2 * l + 1 for l in clause]
            if len(lits) == 1:
                if not self._enqueue_root(lits[0]):
                    self.ok = False
                    return
                continue
            cref = len(self.clauses)
            self.clauses.append(lits)
            self.watches[lits[0]].append(cref)
            self.watches[lits[1]].append(cref)
        self.num_original = len(self.clauses)

    def _enqueue_root(self, lit):
        v = self.val[lit]
        if v == -1:
            return False
        if v == 0:
            self._assign(lit, -1)
        return True

    def _assign(self, lit, reason):
        val = self.val
        val[lit] = 1
        val[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    # ------------------------------------------------------------ heap

    def _heap_insert(self, v):
        if self.heap_idx[v] >= 0:
            return
        self.heap_idx[v] = len(self.heap)
        self.heap.append(v)
        self._heap_up(len(self.heap) - 1)

    def _heap_up(self, i):
        heap, idx, act = self.heap, self.heap_idx, self.activity
        v = heap[i]
        a = act[v]
        while i > 0:
            parent = (i - 1) >> 1
            pv = heap[parent]
            if act[pv] >= a:
                break
            heap[i] = pv
            idx[pv] = i
            i = parent
        heap[i] = v
        idx[v] = i

    def _heap_down(self, i):
        heap, idx, act = self.heap, self.heap_idx, self.activity
        size = len(heap)
        v = heap[i]
        a = act[v]
        while True:
            child = 2 * i + 1
            if child >= size:
                break
            right = child + 1
            if right < size and act[heap[right]] > act[heap[child]]:
                child = right
            cv = heap[child]
            if act[cv] <= a:
                break
            heap[i] = cv
            idx[cv] = i
            i = child
        heap[i] = v
        idx[v] = i

    def _heap_pop(self):
        heap, idx = self.heap, self.heap_idx
        top = heap[0]
        last = heap.pop()
        idx[top] = -1
        if heap:
            heap[0] = last
            idx[last] = 0
            self._heap_down(0)
        return top

    def _bump_var(self, v):
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for i in range(1, self.n + 1):
                act[i] *= 1e-100
            self.var_inc *= 1e-100
        if self.heap_idx[v] >= 0:
            self._heap_up(self.heap_idx[v])

    # ------------------------------------------------------------ search

    def _propagate(self):
        """Unit propagation; returns a conflicting clause ref or -1."""
        val, watches, clauses, trail = self.val, self.watches, self.clauses, self.trail
        level_now = len(self.trail_lim)
        level, reason = self.level, self.reason
        qhead = self.qhead
        confl = -1
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            ws = watches[false_lit]
            i = j = 0
            end = len(ws)
            while i < end:
                cref = ws[i]
                i += 1
                c = clauses[cref]
                if c is None:
                    continue
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = cref
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if val[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(cref)
                        break
                else:
                    ws[j] = cref
                    j += 1
                    if val[first] == -1:
                        confl = cref
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        qhead = len(trail)
                    else:
                        val[first] = 1
                        val[first ^ 1] = -1
                        v = first >> 1
                        level[v] = level_now
                        reason[v] = cref
                        trail.append(first)
            del ws[j:]
            if confl >= 0:
                break
        self.stats["propagations"] += qhead - self.qhead
        self.qhead = qhead
        return confl

    def _analyze(self, confl):
        seen, level, reason, trail, clauses = self.seen, self.level, self.reason, self.trail, self.clauses
        cur = len(self.trail_lim)
        learnt = [0]
        to_clear = []
        path_c = 0
        p = -1
        idx = len(trail) - 1
        while True:
            c = clauses[confl]
            info = self.learnt_info.get(confl)
            if info is not None:
                info[1] += self.cla_inc
            for q in (c if p < 0 else c[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    self._bump_var(v)
                    seen[v] = True
                    to_clear.append(v)
                    if level[v] >= cur:
                        path_c += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            confl = reason[p >> 1]
            seen[p >> 1] = False
            path_c -= 1
            if path_c == 0:
                break
        learnt[0] = p ^ 1
        # local minimization: drop literals implied by other learnt literals
        if len(learnt) > 2:
            kept = [learnt[0]]
            for q in learnt[1:]:
                r = reason[q >> 1]
                if r < 0:
                    kept.append(q)
                    continue
                rc = clauses[r]
                for x in rc[1:]:
                    xv = x >> 1
                    if not seen[xv] and level[xv] > 0:
                        kept.append(q)
                        break
            learnt = kept
        for v in to_clear:
            seen[v] = False
        if len(learnt) == 1:
            back = 0
        else:
            best = 1
            for i in range(2, len(learnt)):
                if level[learnt[i] >> 1] > level[learnt[best] >> 1]:
                    best = i
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = level[learnt[1] >> 1]
        lbd = len({level[q >> 1] for q in learnt})
        return learnt, back, lbd

    def _cancel_until(self, lvl):
        if len(self.trail_lim) <= lvl:
            return
        trail, val, polarity, reason = self.trail, self.val, self.polarity, self.reason
        heap_idx = self.heap_idx
        stop = self.trail_lim[lvl]
        for i in range(len(trail) - 1, stop - 1, -1):
            lit = trail[i]
            v = lit >> 1
            val[lit] = 0
            val[lit ^ 1] = 0
            reason[v] = -1
            polarity[v] = lit & 1
            if heap_idx[v] < 0:
                self._heap_insert(v)
        del trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = len(trail)

    def _pick_branch(self):
        val = self.val
        if self.cfg.random_freq and self.heap and self.rng.random() < self.cfg.random_freq:
            v = self.heap[self.rng.randrange(len(self.heap))]
            if val[2 * v] == 0:
                return 2 * v + self.polarity[v]
        while self.heap:
            v = self._heap_pop()
            if val[2 * v] == 0:
                return 2 * v + self.polarity[v]
        return -1

    def _reduce_db(self):
        info = self.learnt_info
        locked = set()
        val, reason = self.val, self.reason
        for cref in info:
            c = self.clauses[cref]
            if val[c[0]] == 1 and reason[c[0] >> 1] == cref:
                locked.add(cref)
        cands = [cref for cref, (lbd, _) in info.items()
                 if lbd > self.cfg.keep_lbd and cref not in locked]
        cands.sort(key=lambda r: (-info[r][0], info[r][1], r))
        for cref in cands[: len(cands) // 2]:
            self.clauses[cref] = None
            del info[cref]
            self.stats["deleted"] += 1

    def run(self) -> SolverResult:
        t0 = time.perf_counter()
        outcome = self._search(t0)
        stats = dict(self.stats, wall_time=round(time.perf_counter() - t0, 6))
        if outcome is Outcome.SAT:
            model = [False] * (self.n + 1)
            for v in range(1, self.n + 1):
                model[v] = self.val[2 * v] == 1
            return SolverResult(outcome, model, stats)
        return SolverResult(outcome, None, stats)

    def _search(self, t0) -> Outcome:
        if not self.ok or self._propagate() >= 0:
            return Outcome.UNSAT
        cfg = self.cfg
        stats = self.stats
        restart_limit = float(cfg.restart_first)
        conflicts_since_restart = 0
        max_learnts = max(1000.0, self.num_original * cfg.learnt_ratio)
        var_decay_inv = 1.0 / cfg.var_decay
        cla_decay_inv = 1.0 / cfg.clause_decay
        while True:
            confl = self._propagate()
            if confl >= 0:
                stats["conflicts"] += 1
                conflicts_since_restart += 1
                if not self.trail_lim:
                    return Outcome.UNSAT
                learnt, back, lbd = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], -1)
                else:
                    cref = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(cref)
                    self.watches[learnt[1]].append(cref)
                    self.learnt_info[cref] = [lbd, self.cla_inc]
                    stats["learnt"] += 1
                    self._assign(learnt[0], cref)
                self.var_inc *= var_decay_inv
                self.cla_inc *= cla_decay_inv
                if self.cla_inc > 1e20:
                    for info in self.learnt_info.values():
                        info[1] *= 1e-20
                    self.cla_inc *= 1e-20
                if cfg.conflict_budget is not None and stats["conflicts"] >= cfg.conflict_budget:
                    return Outcome.INDETERMINATE
                if (cfg.time_budget is not None and stats["conflicts"] % 64 == 0
                        and time.perf_counter() - t0 > cfg.time_budget):
                    return Outcome.INDETERMINATE
                continue
            if conflicts_since_restart >= restart_limit:
                stats["restarts"] += 1
                conflicts_since_restart = 0
                restart_limit *= cfg.restart_factor
                self._cancel_until(0)
                continue
            if len(self.learnt_info) - len(self.trail) >= max_learnts:
                self._reduce_db()
                max_learnts *= cfg.learnt_growth
            lit = self._pick_branch()
            if lit < 0:
                return Outcome.SAT
            stats["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._assign(lit, -1)


# ---------------------------------------------------------------- oracle

BRUTE_MAX_VARS = 25


def brute_solve(inst: CnfInstance) -> SolverResult:
    """Exhaustive search over all ``2**num_vars`` assignments.

    Assignments are bit-packed integers (bit ``v-1`` is variable ``v``);
    each clause filters the surviving candidates, chunk by chunk.
    """
    n = inst.num_vars
    if n > BRUTE_MAX_VARS:
        raise ValueError(f"brute_solve handles at most {BRUTE_MAX_VARS} variables, got {n}")
    t0 = time.perf_counter()
    masks = []
    for clause in inst.clauses:
        pos = neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << (lit - 1)
            else:
                neg |= 1 << (-lit - 1)
        masks.append((np.uint64(pos), np.uint64(neg)))
    chunk = 1 << 20
    total = 1 << n
    checked = 0
    for start in range(0, total, chunk):
        alive = np.arange(start, min(total, start + chunk), dtype=np.uint64)
        for pos, neg in masks:
            alive = alive[((alive & pos) != 0) | ((~alive & neg) != 0)]
            if alive.size == 0:
                break
        checked += min(chunk, total - start)
        if alive.size:
            bits = int(alive[0])
            model = [False] + [bool(bits >> (v - 1) & 1) for v in range(1, n + 1)]
            return SolverResult(Outcome.SAT, model,
                                dict(assignments=checked, wall_time=time.perf_counter() - t0))
    return SolverResult(Outcome.UNSAT, None,
                        dict(assignments=checked, wall_time=time.perf_counter() - t0))
