"""
Named registry of every verification the package can run.

Each check maps a built potential to one CheckReport; reports come back
sorted by name so output never depends on evaluation order.
"""

import time
from collections.abc import Callable, Iterable
from itertools import combinations_with_replacement

from ..exceptions import SchemaError
from ..models import CheckReport, GWPotential, Verification
from ..utils import ProgressLogger, get_logger
from .frobenius import FrobeniusCalculus, check_dEuler, compare_chain
from .loader import model_identity_failures
from .potentials import check_quasi_homogeneity, check_string_property, classical_limit
from .virasoro import VirasoroChecker

CheckFunction = Callable[["CheckSuite"], CheckReport]


def _combined(name: str, labelled: list[tuple[str, Verification]]) -> CheckReport:
    """One report for many verifications; notes name the first failing case."""
    result = Verification.combine([v for _, v in labelled])
    notes = [f"{len(labelled)} case(s)"]
    failing = [label for label, v in labelled if not v.passed]
    if failing:
        notes.append(f"failing: {', '.join(failing)}")
    return CheckReport.from_verification(name, result, notes)


def _label(indices: Iterable[int]) -> str:
    return "(" + ",".join(f"g{i + 1}" for i in indices) + ")"


class CheckSuite:
    """Runs registered checks against one potential, sharing all caches."""

    def __init__(self, potential: GWPotential, timings: bool = False) -> None:
        self.potential = potential
        self.model = potential.model
        self.timings = timings
        self.calc = FrobeniusCalculus(potential)
        self.virasoro = VirasoroChecker(potential, self.calc)
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    # Model level, exact

    def model_identities(self) -> CheckReport:
        failures = model_identity_failures(self.model)
        dual = self.calc.check_dual_grading()
        if failures:
            return CheckReport("model_identities", False, dual.window, "; ".join(failures))
        return CheckReport.from_verification("model_identities", dual)

    def deuler(self) -> CheckReport:
        return _combined(
            "deuler",
            [(_label([a]), check_dEuler(self.model, self.calc.basis[a])) for a in range(self.model.n)]
            + [("E", check_dEuler(self.model, self.calc.euler))],
        )

    def classical_gaua(self) -> CheckReport:
        checker = VirasoroChecker(classical_limit(self.potential))
        report = CheckReport.from_verification("classical_gaua", checker.identity_gaua())
        report.notes.append(f"classical Delta = {checker.calc.delta_field().to_text()}")
        return report

    # Potentials

    def quasi_homogeneity_g0(self) -> CheckReport:
        return CheckReport.from_verification("quasi_homogeneity_g0", check_quasi_homogeneity(self.potential, 0))

    def quasi_homogeneity_g1(self) -> CheckReport:
        return CheckReport.from_verification("quasi_homogeneity_g1", check_quasi_homogeneity(self.potential, 1))

    def string_property(self) -> CheckReport:
        return CheckReport.from_verification("string_property", check_string_property(self.potential))

    # Frobenius structure

    def wdvv(self) -> CheckReport:
        calc = self.calc
        return _combined(
            "wdvv",
            [
                (_label(t), calc.check_associativity(*(calc.basis[i] for i in t)))
                for t in calc.basis_multisets(3)
            ],
        )

    def frobenius_property(self) -> CheckReport:
        calc = self.calc
        return _combined(
            "frobenius_property",
            [(_label(t), calc.check_frobenius(*(calc.basis[i] for i in t))) for t in calc.basis_multisets(3)],
        )

    def unit(self) -> CheckReport:
        calc = self.calc
        cases = [(_label([a]), calc.check_unit(calc.basis[a])) for a in range(self.model.n)]
        cases.append(("E", calc.check_unit(calc.euler)))
        return _combined("unit", cases)

    def product_rule(self) -> CheckReport:
        calc = self.calc
        cases = [
            (f"E;{_label(pair)}", calc.check_product_rule(calc.euler, *(calc.basis[i] for i in pair)))
            for pair in calc.basis_multisets(2)
        ]
        cases.append(("Delta;E,E", calc.check_product_rule(calc.delta_field(), calc.euler, calc.euler)))
        return _combined("product_rule", cases)

    def _dhomog(self, genus: int) -> CheckReport:
        calc = self.calc
        cases = []
        for k in range(1, 4):
            for indices in calc.basis_multisets(k):
                fields = [calc.basis[i] for i in indices]
                cases.append((_label(indices), calc.check_dhomog(genus, fields)))
        return _combined(f"dhomog_g{genus}", cases)

    def dhomog_g0(self) -> CheckReport:
        return self._dhomog(0)

    def dhomog_g1(self) -> CheckReport:
        return self._dhomog(1)

    def eg04pt(self) -> CheckReport:
        calc = self.calc
        return _combined(
            "eg04pt",
            [(_label(p), calc.check_Eg04pt(calc.basis[p[0]], calc.basis[p[1]])) for p in calc.basis_multisets(2)],
        )

    def dekd(self) -> CheckReport:
        return _combined("dekd", [(f"k={k}", self.calc.check_dEkD(k)) for k in (1, 2, 3)])

    def dde2(self) -> CheckReport:
        return CheckReport.from_verification("dde2", self.calc.check_dDE2())

    def bracket_e2_delta(self) -> CheckReport:
        return CheckReport.from_verification("bracket_e2_delta", self.calc.check_bracket_E2_Delta())

    # Virasoro layer

    def getzler_residual(self) -> CheckReport:
        calc = self.calc
        cases = []
        for indices in combinations_with_replacement(range(self.model.n), 4):
            fields = [calc.basis[i] for i in indices]
            series = self.virasoro.getzler_series(*fields)
            cases.append((_label(indices), compare_chain(series, calc.zero_series())))
        return _combined("getzler_residual", cases)

    def lemma_g1(self) -> CheckReport:
        return self.virasoro.check_lemma_g1()

    def lemma_g0(self) -> CheckReport:
        return self.virasoro.check_lemma_g0()

    def main_theorem(self) -> CheckReport:
        return self.virasoro.check_main_theorem()

    def getzler_assembly(self) -> CheckReport:
        return self.virasoro.check_getzler_assembly()

    def virasoro_small(self) -> CheckReport:
        return self.virasoro.check_virasoro_small()

    def e_psi(self) -> CheckReport:
        return self.virasoro.check_EPsi()

    def string_psi(self) -> CheckReport:
        return self.virasoro.check_string_psi()

    def psi_phi_identity(self) -> CheckReport:
        return self.virasoro.check_psi_phi_identity()

    def psi_constant_term(self) -> CheckReport:
        return self.virasoro.check_psi_constant_term()

    def _proof(self, name: str) -> CheckReport:
        return CheckReport.from_verification(name, self.virasoro.proof_identities()[name]())

    # Running

    def run(self, names: Iterable[str] | None = None) -> list[CheckReport]:
        """
        Run checks by name ("all" or None runs everything).

        Raises:
            SchemaError: If a name is not registered
        """
        selected = resolve_check_names(names)
        progress = ProgressLogger(self.logger, len(selected), "Checks")
        reports = []
        for name in selected:
            started = time.perf_counter()
            report = CHECKS[name](self)
            if self.timings:
                report.millis = (time.perf_counter() - started) * 1000
            progress.update(detail=f"{name} {'pass' if report.passed else 'FAIL'}")
            reports.append(report)
        progress.finish()
        return sorted(reports, key=lambda r: r.name)


PROOF_IDENTITIES = (
    "proof_gaua",
    "proof_egaua",
    "proof_eaua",
    "proof_gdd",
    "proof_edd",
    "proof_eddd",
    "proof_egd",
)

CHECKS: dict[str, CheckFunction] = {
    "model_identities": CheckSuite.model_identities,
    "deuler": CheckSuite.deuler,
    "classical_gaua": CheckSuite.classical_gaua,
    "quasi_homogeneity_g0": CheckSuite.quasi_homogeneity_g0,
    "quasi_homogeneity_g1": CheckSuite.quasi_homogeneity_g1,
    "string_property": CheckSuite.string_property,
    "wdvv": CheckSuite.wdvv,
    "frobenius_property": CheckSuite.frobenius_property,
    "unit": CheckSuite.unit,
    "product_rule": CheckSuite.product_rule,
    "dhomog_g0": CheckSuite.dhomog_g0,
    "dhomog_g1": CheckSuite.dhomog_g1,
    "eg04pt": CheckSuite.eg04pt,
    "dekd": CheckSuite.dekd,
    "dde2": CheckSuite.dde2,
    "bracket_e2_delta": CheckSuite.bracket_e2_delta,
    "getzler_residual": CheckSuite.getzler_residual,
    "lemma_g1": CheckSuite.lemma_g1,
    "lemma_g0": CheckSuite.lemma_g0,
    "main_theorem": CheckSuite.main_theorem,
    "getzler_assembly": CheckSuite.getzler_assembly,
    "virasoro_small": CheckSuite.virasoro_small,
    "e_psi": CheckSuite.e_psi,
    "string_psi": CheckSuite.string_psi,
    "psi_phi_identity": CheckSuite.psi_phi_identity,
    "psi_constant_term": CheckSuite.psi_constant_term,
}
for _name in PROOF_IDENTITIES:
    CHECKS[_name] = lambda suite, name=_name: suite._proof(name)


def resolve_check_names(names: Iterable[str] | None) -> list[str]:
    requested = list(names or [])
    if not requested or "all" in requested:
        return sorted(CHECKS)
    unknown = [n for n in requested if n not in CHECKS]
    if unknown:
        raise SchemaError(f"unknown check(s): {', '.join(unknown)}; available: {', '.join(sorted(CHECKS))}")
    return sorted(dict.fromkeys(requested))


def run_suite(potential: GWPotential, names: Iterable[str] | None = None, timings: bool = False) -> list[CheckReport]:
    return CheckSuite(potential, timings=timings).run(names)
