"""General-linear strand modules S_[lam;mu]V and their checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .partitions import Partition, enumerate_partitions, transpose
from .periplectic_lab import ConventionError, PreconditionError, _info_summary
from .superrep import (GradedSubmodule, InvariantMaps, Symmetrizer, TensorAmbient,
                       TwoSidedComplex, apply_op_rows, batch_to_rows, character_of, check_irreducible,
                       contract_batch, even_basis, gl_invariant_maps, gl_phi_families,
                       gl_space, gl_trace_element, mixed_symmetrizer_image, rows_to_batch,
                       subquotient, trace_images, verify_two_sided_axioms)
from .symfunc import PairSchurSum, lascoux_character

_UNBOUNDED = 1 << 62


@dataclass(frozen=True)
class GlInstance:
    n: int
    m: int
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1:
            raise PreconditionError("requires r >= 1 (r = 0 is the Koszul case)")
        if self.s < 1:
            raise PreconditionError("requires s >= 1 (s = 0 leaves lambda and mu empty)")
        if self.n < self.r + self.s:
            raise PreconditionError(f"requires dim E >= r+s ({self.n} >= {self.r}+{self.s} fails)")
        if self.m < self.r + self.s:
            raise PreconditionError(f"requires dim F >= r+s ({self.m} >= {self.r}+{self.s} fails)")

    @property
    def lam(self) -> Partition:
        return Partition((self.s,) * (self.n - self.r - self.s))

    @property
    def mu(self) -> Partition:
        return Partition((self.s,) * (self.m - self.r - self.s))

    @property
    def key(self):
        return ("gl", self.n, self.m, self.r, self.s)

    def to_json(self):
        return {"kind": "gl", "n": self.n, "m": self.m, "r": self.r, "s": self.s,
                "lambda": self.lam.to_json(), "mu": self.mu.to_json()}

    @property
    def top_degree(self) -> int:
        return self.s * (self.n - self.r - self.s) + self.s * (self.m - self.r - self.s)


def gl_complex(module: GradedSubmodule, info=None) -> TwoSidedComplex:
    sp = module.space
    phi, phip = gl_phi_families(sp)
    return TwoSidedComplex(module, even_basis(sp), phi, phip, info or {})


def build_gl_module(inst: GlInstance, cap=None) -> TwoSidedComplex:
    """S_[lam;mu]V, twisted by det E*^s (x) det F^s, with its gl(V) operators."""
    sp = gl_space(inst.n, inst.m)
    lam, mu = inst.lam, inst.mu
    S = mixed_symmetrizer_image(lam, mu, sp, cap, twist=inst.s)
    sym = Symmetrizer([(lam, 0), (mu, lam.size)], lam.size + mu.size)
    if lam.size and mu.size:
        maps = gl_invariant_maps(lam, mu, sp)
    else:
        maps = InvariantMaps(None, None, None, None)
    Q, info = subquotient(S, sym, maps, name=f"S_[{lam};{mu}]V")
    if maps.eval_slots is not None and not info["eval_nonzero_degrees"]:
        raise ConventionError("evaluation-induced map vanishes identically")
    if maps.trace_slots is not None and not info["trace_nonzero_degrees"]:
        raise ConventionError("trace-induced map vanishes identically")
    info["S_module"] = S
    return gl_complex(Q, info)


def lascoux_compare(cx: TwoSidedComplex, inst: GlInstance) -> list[dict]:
    out = []
    top = max([inst.top_degree] + cx.module.degrees())
    for h in range(top + 1):
        ch = character_of(cx.module, h) if h in cx.module.degrees() else PairSchurSum()
        pred = lascoux_character(inst.r, inst.s, h, inst.n, inst.m)
        out.append({"h": h, "dim": ch.dim(inst.n, inst.m), "character": ch,
                    "lascoux": pred, "lascoux_dim": pred.dim(inst.n, inst.m),
                    "contains": ch.contains(pred), "equal": ch == pred})
    return out


def check_irreducible_gl(cx: TwoSidedComplex, which="minimal") -> dict:
    return check_irreducible(cx, which)


@dataclass
class GlReport:
    instance: GlInstance
    degrees: list
    axioms: dict
    irreducible: dict | None
    module_info: dict = field(default_factory=dict)

    @property
    def conjecture_equal(self) -> list[bool]:
        return [row["equal"] for row in self.degrees]

    def checks(self) -> dict:
        c = {"sq_zero_phi": self.axioms["sq_zero_phi"],
             "sq_zero_phi_prime": self.axioms["sq_zero_phi_prime"],
             "bracket": self.axioms["bracket"],
             "degree_shift": self.axioms["degree_shift"],
             "contains_lascoux": all(r["contains"] for r in self.degrees)}
        if self.irreducible is not None and all(self.conjecture_equal):
            c["irreducible"] = self.irreducible["irreducible"]
        return c

    @property
    def passed(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "degrees": [{"h": r["h"], "dim": r["dim"], "character": r["character"].to_json(),
                         "lascoux": r["lascoux"].to_json(), "lascoux_dim": r["lascoux_dim"],
                         "contains": r["contains"], "equal": r["equal"]} for r in self.degrees],
            "axioms": dict(self.axioms),
            "irreducible": self.irreducible,
            "conjecture": {"per_degree_equal": self.conjecture_equal},
            "module": self.module_info,
            "checks": self.checks(),
            "passed": self.passed,
        }


def run_gl(inst: GlInstance, cap=None, irreducibility=True) -> GlReport:
    cx = build_gl_module(inst, cap)
    rows = lascoux_compare(cx, inst)
    axioms = verify_two_sided_axioms(cx)
    irr = check_irreducible_gl(cx) if irreducibility else None
    return GlReport(inst, rows, axioms, irr, _info_summary(cx))


# ---------------------------------------------------------------- the complex property

def dimension_condition(lam, mu, n: int, m: int) -> bool:
    lam, mu = Partition(lam), Partition(mu)
    return n - transpose(lam).part(0) + lam.part(0) == m - transpose(mu).part(0) + mu.part(0)


def glcomplex_composite(lam, mu, n: int, m: int) -> list[dict]:
    """eval o trace on the degree-0 words of the lam/1, mu/1 slots.

    Returns one sparse image vector per source word (empty when zero).
    """
    lam, mu = Partition(lam), Partition(mu)
    if not lam.size or not mu.size:
        raise PreconditionError("requires lambda and mu nonempty")
    sp = gl_space(n, m)
    a, b = lam.size, mu.size
    V, Vd = sp.letters(0), sp.letters(1)
    amb = TensorAmbient(sp, [V] * a + [Vd] * b, cap=_UNBOUNDED)
    sym = Symmetrizer([(lam, 0), (mu, a)], a + b)
    maps = gl_invariant_maps(lam, mu, sp)
    deg0 = [l for l in range(sp.size) if sp.hdeg[l] == 0]
    small = TensorAmbient(sp, [[l for l in V if l in deg0]] * (a - 1)
                          + [[l for l in Vd if l in deg0]] * (b - 1), cap=_UNBOUNDED)
    src = small.words()
    rows = trace_images(amb, sym, maps, src)
    batch = sym.row(rows_to_batch(rows, amb), amb)
    ids, keys, coeffs = contract_batch(batch, 0, a, maps.pairing, sp, amb.base)
    return batch_to_rows(ids, keys, coeffs, len(src))


def check_prop_glcomplex(lam, mu, n: int, m: int) -> dict:
    """Is the trace-then-evaluation composite zero in homological degree 1?"""
    images = glcomplex_composite(lam, mu, n, m)
    return {"lambda": Partition(lam).to_json(), "mu": Partition(mu).to_json(), "n": n, "m": m,
            "condition": dimension_condition(lam, mu, n, m),
            "zero": not any(images), "sources": len(images)}


def glcomplex_instances(max_size=3, max_dim=4):
    """(lam, mu, n, m) with |lam|,|mu| <= max_size, n,m <= max_dim, lam, mu fitting, condition holding."""
    shapes = [p for k in range(1, max_size + 1) for p in enumerate_partitions(k)]
    out = []
    for lam in shapes:
        for mu in shapes:
            for n in range(1, max_dim + 1):
                for m in range(1, max_dim + 1):
                    if dimension_condition(lam, mu, n, m):
                        out.append((lam, mu, n, m))
    return out


def trace_eval_scalar(n: int, m: int) -> int:
    """eval(t) for lam = mu = (1)."""
    rows = glcomplex_composite((1,), (1,), n, m)
    return sum(rows[0].values())


def trace_invariance(n: int, m: int) -> bool:
    """t in V (x) V*[1] is killed by every even, Phi and Phi' derivation."""
    sp = gl_space(n, m)
    amb = TensorAmbient(sp, [sp.letters(0), sp.letters(1)])
    t = {amb.encode_word((x, y)): c for x, y, c in gl_trace_element(sp)}
    phi, phip = gl_phi_families(sp)
    ops = even_basis(sp) + phi.ops + phip.ops
    return all(not img for img in apply_op_rows_all(ops, t, amb))


def apply_op_rows_all(ops, vec, amb):
    return [apply_op_rows(op, [vec], amb)[0] for op in ops]
