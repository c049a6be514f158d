"""Formula-versus-engine comparisons shared by the CLI and the test suite.

Each check computes Bredon homology with B coefficients through the
simplicial engine and compares it degreewise, up to Mackey isomorphism, with
the closed-form prediction or with another engine computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .c2sset import (
    C2SSet,
    bredon_homology_range,
    builtin,
    coinduce,
    disjoint_basepoint,
    fill_sphere_table,
    james_stage,
    norm_space,
    product,
    smash,
    suspend_sigma,
    suspend_trivial,
)
from .grfree import (
    FreeDescriptor,
    GradedSet,
    RORep,
    SphereTable,
    box_descriptors,
    coind_homology_descriptor,
    evaluate_descriptor,
    fixed,
    james_homology_descriptor,
)
from .mackey import MackeyFunctor, direct_sum, norm_F2, same_invariants

# reduced B-homology of the pointed sphere atoms, as a single FIXED shift
SPHERE_ATOMS = {
    "S0": RORep(0, 0),
    "S1": RORep(1, 0),
    "S2": RORep(2, 0),
    "Ssigma": RORep(0, 1),
    "Srho": RORep(1, 1),
}


@dataclass
class CheckRow:
    degree: int
    verdict: str          # "PASS" or "FAIL"
    iso_status: str       # "found", "not-found" or "invariants-only"
    lhs: MackeyFunctor
    rhs: MackeyFunctor

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "verdict": self.verdict,
            "iso_status": self.iso_status,
            "lhs": self.lhs.to_record(),
            "rhs": self.rhs.to_record(),
        }


@dataclass
class CheckReport:
    name: str
    rows: list[CheckRow] = field(default_factory=list)
    descriptor: FreeDescriptor | None = None

    @property
    def passed(self) -> bool:
        return all(r.verdict == "PASS" for r in self.rows)

    def to_json(self) -> dict:
        out = {
            "check": self.name,
            "result": "PASS" if self.passed else "FAIL",
            "rows": [r.to_json() for r in self.rows],
        }
        if self.descriptor is not None:
            out["descriptor"] = self.descriptor.to_json()
        return out


def compare(n: int, lhs: MackeyFunctor, rhs: MackeyFunctor) -> CheckRow:
    rep = same_invariants(lhs, rhs)
    verdict = "FAIL" if rep.verdict == "not-isomorphic" else "PASS"
    return CheckRow(n, verdict, rep.iso_status, lhs, rhs)


def compare_lists(name: str, lhs: list[MackeyFunctor], rhs: list[MackeyFunctor],
                  descriptor: FreeDescriptor | None = None) -> CheckReport:
    return CheckReport(name, [compare(n, a, b) for n, (a, b) in enumerate(zip(lhs, rhs))],
                       descriptor)


def mod2_basis(x: C2SSet) -> GradedSet:
    """Homogeneous basis of the unreduced mod 2 homology of the underlying space."""
    b = norm_F2()
    hs = bredon_homology_range(x.underlying(), b, x.dim)
    elems = []
    for n, h in enumerate(hs):
        for i in range(h.bot.ngens):
            elems.append(("1" if (n, i) == (0, 0) else f"x{n}_{i}", n))
    return GradedSet(tuple(elems))


def reduced_mod2_basis(x: C2SSet) -> GradedSet:
    b = norm_F2()
    hs = bredon_homology_range(x.underlying(), b, x.dim, reduced=True)
    return GradedSet(tuple((f"x{n}_{i}", n) for n, h in enumerate(hs) for i in range(h.bot.ngens)))


def evaluate_range(d: FreeDescriptor, max_degree: int,
                   table: SphereTable | None = None) -> list[MackeyFunctor]:
    table = fill_sphere_table(d.fixed_shifts(), max_degree, table)
    return [evaluate_descriptor(d, n, table) for n in range(max_degree + 1)]


def coind_check(x: C2SSet, max_degree: int, table: SphereTable | None = None) -> CheckReport:
    """H_n(Map(C2, X); B) against the norm of the mod 2 basis of X."""
    b = norm_F2()
    desc = coind_homology_descriptor(mod2_basis(x))
    lhs = bredon_homology_range(coinduce(x, max_degree + 1), b, max_degree)
    return compare_lists(f"coind({x.name})", lhs, evaluate_range(desc, max_degree, table), desc)


def james_check(x: C2SSet, stage: int, max_degree: int, hred_x: FreeDescriptor,
                table: SphereTable | None = None) -> CheckReport:
    """Unreduced H_n(J_stage(X); B) against the truncated James prediction."""
    b = norm_F2()
    desc = james_homology_descriptor(reduced_mod2_basis(x), hred_x, stage, max_degree)
    lhs = bredon_homology_range(james_stage(x, stage, max_degree + 1), b, max_degree)
    return compare_lists(f"james({x.name},{stage})", lhs,
                         evaluate_range(desc, max_degree, table), desc)


def sphere_james_check(name: str, stage: int, max_degree: int,
                       table: SphereTable | None = None) -> CheckReport:
    return james_check(builtin(name), stage, max_degree,
                       FreeDescriptor((fixed(SPHERE_ATOMS[name]),)), table)


def _sum_lists(a: list[MackeyFunctor], b: list[MackeyFunctor]) -> list[MackeyFunctor]:
    return [direct_sum(x, y) for x, y in zip(a, b)]


def splitting_check(x: C2SSet, max_degree: int) -> CheckReport:
    """H~(S^sigma ^ Map(C2,X)) against H~(C2+ ^ S^1 ^ X) + H~(S^sigma ^ N X)."""
    b = norm_F2()
    bound = max_degree + 1
    lhs_space = suspend_sigma(coinduce(x, bound), bound)
    free_space = smash(disjoint_basepoint(builtin("C2")), suspend_trivial(x, bound), bound)
    norm_part = suspend_sigma(norm_space(x, bound), bound)
    lhs = bredon_homology_range(lhs_space, b, max_degree, reduced=True)
    rhs = _sum_lists(
        bredon_homology_range(free_space, b, max_degree, reduced=True),
        bredon_homology_range(norm_part, b, max_degree, reduced=True),
    )
    return compare_lists(f"splitting({x.name})", lhs, rhs)


def untwisting_check(max_degree: int) -> CheckReport:
    """H~(C2+ ^ S^sigma) against H~(C2+ ^ S^1)."""
    b = norm_F2()
    c2p = disjoint_basepoint(builtin("C2"))
    lhs = bredon_homology_range(smash(c2p, builtin("Ssigma")), b, max_degree, reduced=True)
    rhs = bredon_homology_range(smash(c2p, builtin("S1")), b, max_degree, reduced=True)
    return compare_lists("untwisting", lhs, rhs)


def kunneth_check(x: C2SSet, max_degree: int, table: SphereTable | None = None) -> CheckReport:
    """H_n(Map(C2,X) x S^sigma; B) against the box product of the two free descriptors."""
    b = norm_F2()
    sig = FreeDescriptor((fixed(0), fixed(RORep(0, 1))))
    desc = box_descriptors(coind_homology_descriptor(mod2_basis(x)), sig)
    space = product(coinduce(x, max_degree + 1), builtin("Ssigma"), max_degree + 1)
    lhs = bredon_homology_range(space, b, max_degree)
    return compare_lists(f"kunneth({x.name})", lhs, evaluate_range(desc, max_degree, table), desc)
