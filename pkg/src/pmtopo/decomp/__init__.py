from .certificate import CONDITIONAL, FAILURE, PROVED, RULES, Certificate
from .expr import (
    Atom,
    HalfSmash,
    Loop,
    Point,
    PolyProd,
    Product,
    Smash,
    Sphere,
    Suspension,
    Wedge,
    expr_homology,
    normalize,
    parse_expr,
)
from .hilton_milnor import HiltonMilnorExpansion, hilton_milnor, lyndon_words
from .prover import RULE_ORDER, membership_report, p_membership
from .reports import loop_report, quasitoric_report
from .splittings import (
    Decomposition,
    facet_removal_decomposition,
    skeleton_decomposition,
    skeleton_wedge_of_zk,
)
