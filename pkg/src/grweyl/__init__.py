"""grweyl: exact computations in graph groupoid convolution algebras.

Finite graphs, their eventually periodic path spaces and groupoids, the
path-pair *-algebra with exact cyclotomic scalars, evaluable cocycles,
Watatani indices of kernel expectations, and bounded enumeration of the
eventually shift-commuting automorphisms realizing the restricted Weyl
group.
"""

from .algebra import (AlgebraElement, check_cuntz_relations,
                      convolve_pointwise_oracle, evaluate, expectation_diagonal,
                      expectation_kernel, group_act, multiply, quasi_basis,
                      watatani_index)
from .cocycles import (BirkhoffCocycle, CoboundaryCocycle, EdgeLabeling,
                       LabeledCocycle, ProductCocycle, WindowFunction, Z,
                       eval_cocycle, factor_through_abelianization,
                       find_separating_coboundary, image_subgroup,
                       kernel_minimality_sufficient, kernel_transitivity,
                       transported)
from .dynamics import (EventualAutomorphism, GroupoidAutomorphism,
                       check_property_P, compose_autos,
                       enumerate_eventual_automorphisms,
                       eventual_conjugacy_search, identity_automorphism,
                       orbit_map_to_groupoid_hom, replay_certificate)
from .errors import (BisectionError, GraphFormatError, GrweylError,
                     InconsistencyError, NotComposableError, PreconditionError,
                     SearchExhaustedError)
from .exprparse import (parse_ev_path_literal, parse_expression, parse_labeling,
                        parse_path_literal)
from .graphs import (FinitePath, Graph, check_condition_L, check_no_sinks,
                     check_no_sources, check_pair_sync,
                     check_topological_transitivity, parse_graph, tilde_classes)
from .groups import FiniteGroup, cyclic_group, symmetric_group, trivial_group
from .pathspace import (BasicBisection, CylinderUnion, EvPeriodicPath,
                        GroupoidElement, bisection_contains, bisection_multiply,
                        compose, ell_tilde, flip_obstruction_search,
                        generating_bisections)
from .scalars import Cyclotomic, RootOfUnity
from .weyl import (AlgebraAutomorphism, apply_automorphism, check_fixes_diagonal,
                   check_semidirect_law, enumerate_restricted_weyl,
                   image_of_bisection)

__version__ = "0.1.0"
