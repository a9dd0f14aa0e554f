"""Exact subset products, group-algebra counting and random walks on finite groups."""

__version__ = "0.1.0"

from .algebra import (
    CountReport,
    Decision,
    GroupAlgebraVector,
    Trichotomy,
    VerificationReport,
    convolve,
    count_products,
    count_products_bruteforce,
    d_of_family,
    decide_by_sign,
    decision_holds,
    indicator,
    mann_pair,
    sweep_theorem2,
    theorem3_decide,
    verify_theorem2,
)
from .errors import *  # noqa: F401,F403
from .group import (
    FiniteGroup,
    GroupElement,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    from_cayley_table,
    from_permutations,
    identity,
    inv,
    make_group,
    mul,
    read_table_file,
    symmetric,
    write_table_file,
)
from .subsets import (
    StabilizationReport,
    Subset,
    SubsetFamily,
    complement,
    inverse_set,
    parse_subset,
    power,
    product,
    product_of,
    stabilizes_at_G,
)
from .walk import (
    ConvergenceReport,
    ProbDist,
    carrier,
    convergence_probe,
    convolve_prob,
    n_fold,
    point_mass,
    tv_distance,
    tv_to_uniform,
    uniform,
    uniform_on,
)
