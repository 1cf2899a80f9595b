"""Verifier for running the verification suites over the family matrix."""

import math
from collections.abc import Callable
from typing import cast

from pydantic import BaseModel, Field

from growthindex.associated.duality import duality_report, hat_relation_check
from growthindex.associated.functions import associate, integral_relation_check
from growthindex.config.models import EstimatorSettings, SuiteCase
from growthindex.config.presets import get_suite
from growthindex.core.errors import GrowthIndexError
from growthindex.core.logging import get_logger
from growthindex.core.verdict import PropertyVerdict, from_bool
from growthindex.generators.spec import make_function, make_sequence
from growthindex.indices.battery import TheoremId, battery
from growthindex.indices.matuszewska import (
    IndexEstimate,
    IndexReport,
    alpha,
    indices,
    seq_indices,
)
from growthindex.legendre.conjugate import least_concave_majorant
from growthindex.legendre.peetre import (
    conjugate_index_identity,
    gamma_shift_check,
    peetre_check,
)
from growthindex.weights.function import EvaluableFunction
from growthindex.weights.function_conditions import check_omega
from growthindex.weights.sequence import WeightSequence
from growthindex.weights.sequence_conditions import check_condition

logger = get_logger(__name__)

HAT_GAMMA_FLOOR = 20.0


class VerdictRecord(BaseModel):
    """One (family, condition, verdict) line of a suite report."""

    model_config = {"frozen": True}

    suite: str
    family: str
    verdict: PropertyVerdict
    parameter: float | None = None


class Contradiction(BaseModel):
    """Two definite verdicts that should agree but do not."""

    model_config = {"frozen": True}

    suite: str
    family: str
    first: str
    second: str
    parameter: float | None = None


class CaseError(BaseModel):
    """A case that raised before any of its verdicts could be recorded."""

    model_config = {"frozen": True}

    suite: str
    family: str
    error: str
    message: str


class SuiteReport(BaseModel):
    """Everything a verification run found."""

    suite: str
    records: list[VerdictRecord] = Field(default_factory=list)
    contradictions: list[Contradiction] = Field(default_factory=list)
    errors: list[CaseError] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every case ran and no definite contradiction was found."""
        return not self.contradictions and not self.errors


def index_predicate(value: float, threshold: float, tolerance: float) -> bool | None:
    """value > threshold, undecided within tolerance of the threshold."""
    if math.isnan(value):
        return None
    if value > threshold + tolerance:
        return True
    if value < threshold - tolerance:
        return False
    return None


def expectation_verdict(
    name: str, estimate: float, expected: float, tolerance: float
) -> PropertyVerdict:
    """Compare an index estimate with a known value.

    An infinite expectation is met by any estimate at least 1/tolerance.
    """
    condition_id = f"{name}_expected"
    if math.isinf(expected):
        return from_bool(
            condition_id, estimate >= 1.0 / tolerance, estimate=estimate, expected=expected
        )
    return from_bool(
        condition_id,
        abs(estimate - expected) <= tolerance,
        estimate=estimate,
        expected=expected,
    )


class Verifier:
    """Verifier runs suites of equivalence and identity checks.

    A suite passes when no two definite verdicts that must agree disagree,
    and every known index value is reproduced.
    """

    def __init__(self, settings: EstimatorSettings | None = None) -> None:
        """Initialize the Verifier.

        Args:
            settings: Estimator settings shared by every check
        """
        self.settings = settings or EstimatorSettings()
        self._handlers: dict[str, Callable[[SuiteReport, str, SuiteCase], None]] = {
            "alpha_fn": self._battery_case,
            "beta_fn": self._battery_case,
            "alpha_seq": self._battery_case,
            "beta_seq": self._battery_case,
            "duality": self._duality_case,
            "legendre": self._legendre_case,
            "counterexample": self._counterexample_case,
        }

    def run(self, name: str) -> SuiteReport:
        """Run a suite, or every suite for ``all``.

        Raises:
            ValueError: If the suite is unknown
        """
        report = SuiteReport(suite=name)
        for suite, cases in get_suite(name).items():
            logger.info("Running suite", suite=suite, cases=len(cases))
            for case in cases:
                try:
                    self._handlers[suite](report, suite, case)
                except GrowthIndexError as e:
                    logger.error(
                        "Case could not be checked", suite=suite, family=case.family, error=str(e)
                    )
                    report.errors.append(
                        CaseError(
                            suite=suite,
                            family=case.family,
                            error=type(e).__name__,
                            message=str(e),
                        )
                    )
        logger.info(
            "Verification finished",
            suite=name,
            records=len(report.records),
            contradictions=len(report.contradictions),
            errors=len(report.errors),
        )
        return report

    def _record(
        self,
        report: SuiteReport,
        suite: str,
        family: str,
        verdict: PropertyVerdict,
        parameter: float | None = None,
        asserted: bool = False,
    ) -> None:
        """Store a verdict; an asserted verdict that fails is a contradiction."""
        report.records.append(
            VerdictRecord(suite=suite, family=family, verdict=verdict, parameter=parameter)
        )
        if asserted and verdict.fails:
            report.contradictions.append(
                Contradiction(
                    suite=suite,
                    family=family,
                    first=verdict.id,
                    second=verdict.message or "expected to hold",
                    parameter=parameter,
                )
            )

    def _expectations(
        self, report: SuiteReport, suite: str, case: SuiteCase, estimates: IndexReport
    ) -> None:
        tol = 2 * self.settings.tolerance
        for name, expected in case.expected.items():
            estimate = getattr(estimates, name)
            if isinstance(estimate, IndexEstimate):
                estimate = estimate.value
            self._record(
                report,
                suite,
                case.family,
                expectation_verdict(name, estimate, expected, tol),
                asserted=True,
            )

    def _implications(
        self,
        report: SuiteReport,
        suite: str,
        family: str,
        pairs: list[tuple[PropertyVerdict, bool | None, str]],
    ) -> None:
        """Each condition against the index statement it is equivalent to."""
        for verdict, predicate, statement in pairs:
            self._record(report, suite, family, verdict)
            if verdict.definite and predicate is not None and verdict.holds != predicate:
                report.contradictions.append(
                    Contradiction(suite=suite, family=family, first=verdict.id, second=statement)
                )

    def _battery_case(self, report: SuiteReport, suite: str, case: SuiteCase) -> None:
        subject: EvaluableFunction | WeightSequence
        if suite.endswith("_fn"):
            subject = make_function(case.family, self.settings)
        else:
            subject = make_sequence(case.family, self.settings)
        for parameter in case.parameters:
            result = battery(subject, cast(TheoremId, suite), parameter, self.settings)
            for verdict in result.conditions:
                self._record(report, suite, case.family, verdict, parameter)
            for first, second in result.contradictions:
                report.contradictions.append(
                    Contradiction(
                        suite=suite,
                        family=case.family,
                        first=first,
                        second=second,
                        parameter=parameter,
                    )
                )
        if isinstance(subject, EvaluableFunction):
            estimates = indices(subject, self.settings)
        else:
            estimates = seq_indices(subject, self.settings)
        self._expectations(report, suite, case, estimates)
        if suite.startswith("alpha"):
            self._implications(report, suite, case.family, self._pairs(subject, estimates))

    def _pairs(
        self, subject: EvaluableFunction | WeightSequence, estimates: IndexReport
    ) -> list[tuple[PropertyVerdict, bool | None, str]]:
        settings = self.settings
        tol = settings.tolerance
        a, b = estimates.alpha.value, estimates.beta.value
        finite_alpha = None if math.isnan(a) else math.isfinite(a)
        if isinstance(subject, EvaluableFunction):
            return [
                (check_omega(subject, "om1", settings), finite_alpha, "alpha < inf"),
                (check_omega(subject, "om6", settings), index_predicate(b, 0.0, tol), "beta > 0"),
                (
                    check_omega(subject, "om_snq", settings),
                    index_predicate(estimates.gamma, 1.0, tol),
                    "gamma > 1",
                ),
            ]
        return [
            (
                check_condition(subject, "snq", settings=settings),
                index_predicate(b, 0.0, tol),
                "gamma(M) > 0",
            ),
            (
                check_condition(subject, "gamma_r(1)", settings=settings),
                index_predicate(b, 1.0, tol),
                "gamma(M) > 1",
            ),
            (check_condition(subject, "mg", settings=settings), finite_alpha, "alpha(m) < inf"),
        ]

    def _duality_case(self, report: SuiteReport, suite: str, case: SuiteCase) -> None:
        M = make_sequence(case.family, self.settings)
        result = duality_report(M, self.settings)
        for verdict in result.checks:
            self._record(report, suite, case.family, verdict, asserted=True)
        for verdict in [*result.flags, result.srs]:
            self._record(report, suite, case.family, verdict)
        exact = integral_relation_check(associate(M, self.settings))
        self._record(report, suite, case.family, exact, asserted=True)

    def _legendre_case(self, report: SuiteReport, suite: str, case: SuiteCase) -> None:
        sigma = make_function(case.family, self.settings)
        asserted = [
            least_concave_majorant(sigma, self.settings).agreement,
            gamma_shift_check(sigma, "upper", self.settings),
            gamma_shift_check(sigma, "lower", self.settings),
            conjugate_index_identity(sigma, self.settings),
        ]
        for verdict in asserted:
            self._record(report, suite, case.family, verdict, asserted=True)
        self._record(report, suite, case.family, peetre_check(sigma, self.settings))
        self._expectations(report, suite, case, indices(sigma, self.settings))

    def _counterexample_case(self, report: SuiteReport, suite: str, case: SuiteCase) -> None:
        M = make_sequence(case.family, self.settings)
        tol = 2 * self.settings.tolerance
        m = seq_indices(M, self.settings)
        pair = associate(M, self.settings)
        alpha_om = alpha(pair.omega, self.settings, pair.log_ceiling).value
        verdicts = [
            expectation_verdict("gamma_M", m.beta.value, 0.0, tol),
            expectation_verdict("omega_M", m.mu.value, math.inf, tol),
            from_bool("gamma_om_infinite", alpha_om <= self.settings.tolerance, alpha_om=alpha_om),
            from_bool(
                "gamma_M_below_gamma_om",
                m.beta.value < tol and alpha_om <= self.settings.tolerance,
                gamma_M=m.beta.value,
                alpha_om=alpha_om,
            ),
        ]
        hat = hat_relation_check(M, self.settings)
        gamma_hat = float(hat.witness.get("gamma_hat", math.nan))
        verdicts.append(
            from_bool("gamma_om_hat", gamma_hat >= HAT_GAMMA_FLOOR, gamma_hat=gamma_hat)
        )
        for verdict in verdicts:
            self._record(report, suite, case.family, verdict, asserted=True)
        self._record(report, suite, case.family, hat)
