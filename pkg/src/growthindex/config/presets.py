"""Built-in verification suites: which families each suite runs."""

import math

from growthindex.config.models import SUITE_NAMES, SuiteCase

INF = math.inf

# Function families with their Matuszewska indices alpha = beta
GEVREY_FUNCTIONS = (
    SuiteCase(family="gevrey_fn:s=0.25", expected={"alpha": 0.25, "beta": 0.25}),
    SuiteCase(family="gevrey_fn:s=0.5", expected={"alpha": 0.5, "beta": 0.5}),
    SuiteCase(family="gevrey_fn:s=1", expected={"alpha": 1.0, "beta": 1.0}),
)

ALPHA_FN_CASES = (
    GEVREY_FUNCTIONS[0].model_copy(update={"parameters": (0.5, 1.0)}),
    GEVREY_FUNCTIONS[1].model_copy(update={"parameters": (0.25, 1.0)}),
    GEVREY_FUNCTIONS[2].model_copy(update={"parameters": (0.5, 2.0)}),
    SuiteCase(
        family="logpow_fn:s=2", parameters=(0.25, 1.0), expected={"alpha": 0.0, "beta": 0.0}
    ),
    SuiteCase(
        family="linlog_fn:alpha=1", parameters=(0.5, 2.0), expected={"alpha": 1.0, "beta": 1.0}
    ),
    SuiteCase(
        family="power_fn:s=2", parameters=(1.0, 3.0), expected={"alpha": 2.0, "beta": 2.0}
    ),
)

BETA_FN_CASES = (
    GEVREY_FUNCTIONS[0].model_copy(update={"parameters": (0.0, 0.5)}),
    GEVREY_FUNCTIONS[1].model_copy(update={"parameters": (0.25, 1.0)}),
    GEVREY_FUNCTIONS[2].model_copy(update={"parameters": (0.5, 1.5)}),
    SuiteCase(family="logpow_fn:s=2", parameters=(0.25, 1.0), expected={"beta": 0.0}),
    SuiteCase(family="linlog_fn:alpha=1", parameters=(0.5, 1.5), expected={"beta": 1.0}),
    SuiteCase(family="power_fn:s=2", parameters=(1.0, 3.0), expected={"beta": 2.0}),
)

# Sequence families with the indices of their quotients m
ALPHA_SEQ_CASES = (
    SuiteCase(
        family="gevrey_seq:alpha=0.5", parameters=(0.25, 1.0), expected={"alpha": 0.5, "beta": 0.5}
    ),
    SuiteCase(
        family="gevrey_seq:alpha=1", parameters=(0.5, 2.0), expected={"alpha": 1.0, "beta": 1.0}
    ),
    SuiteCase(
        family="gevrey_seq:alpha=2", parameters=(1.0, 3.0), expected={"alpha": 2.0, "beta": 2.0}
    ),
    SuiteCase(family="m_alpha_beta:alpha=1,beta=1", parameters=(0.5, 2.0), expected={"alpha": 1.0}),
    SuiteCase(family="mq:q=2", parameters=(1.0, 4.0), expected={"alpha": INF, "beta": INF}),
    SuiteCase(family="m0_beta:beta=1", parameters=(0.25, 1.0), expected={"alpha": 0.0}),
)

BETA_SEQ_CASES = (
    SuiteCase(family="gevrey_seq:alpha=0.5", parameters=(0.25, 1.0), expected={"beta": 0.5}),
    SuiteCase(family="gevrey_seq:alpha=1", parameters=(0.5, 1.5), expected={"beta": 1.0}),
    SuiteCase(family="gevrey_seq:alpha=2", parameters=(1.0, 3.0), expected={"beta": 2.0}),
    SuiteCase(family="m_alpha_beta:alpha=1,beta=1", parameters=(0.5, 1.5), expected={"beta": 1.0}),
    SuiteCase(family="m0_beta:beta=1", parameters=(0.25, 1.0), expected={"beta": 0.0}),
)

DUALITY_CASES = (
    SuiteCase(family="gevrey_seq:alpha=0.5"),
    SuiteCase(family="gevrey_seq:alpha=1"),
    SuiteCase(family="gevrey_seq:alpha=2"),
    SuiteCase(family="m_alpha_beta:alpha=1,beta=1"),
    SuiteCase(family="four_index:beta=1,mu=2,rho=3,alpha=4"),
    SuiteCase(family="four_index:beta=2,mu=2.5,rho=3,alpha=3.5"),
)

LEGENDRE_CASES = (
    SuiteCase(family="gevrey_fn:s=0.5", expected={"gamma": 2.0}),
    SuiteCase(family="gevrey_fn:s=0.333333333333", expected={"gamma": 3.0}),
)

COUNTEREXAMPLE_CASES = (SuiteCase(family="counterexample"),)

SUITES: dict[str, tuple[SuiteCase, ...]] = {
    "alpha_fn": ALPHA_FN_CASES,
    "beta_fn": BETA_FN_CASES,
    "alpha_seq": ALPHA_SEQ_CASES,
    "beta_seq": BETA_SEQ_CASES,
    "duality": DUALITY_CASES,
    "legendre": LEGENDRE_CASES,
    "counterexample": COUNTEREXAMPLE_CASES,
}


def get_available_suites() -> list[str]:
    """Get the list of suite names, ``all`` included.

    Returns:
        List of suite names
    """
    return list(SUITE_NAMES)


def get_suite(name: str) -> dict[str, tuple[SuiteCase, ...]]:
    """Get the cases of a suite, grouped by the suite that runs them.

    ``all`` expands to every suite in a fixed order.

    Args:
        name: Suite name

    Returns:
        Mapping from suite name to its cases

    Raises:
        ValueError: If the suite name is not recognized
    """
    if name == "all":
        return dict(SUITES)
    if name not in SUITES:
        raise ValueError(
            f"Unknown suite '{name}'. Available suites: {', '.join(get_available_suites())}"
        )
    return {name: SUITES[name]}
