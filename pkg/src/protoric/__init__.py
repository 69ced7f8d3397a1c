"""Exact-arithmetic computations with towers of affine semigroups and their
affine toric duals at finite truncation depth."""

from .cones import (Cone, HilbertBasis, cone_contains, cone_from_rays,
                    dual_cone, faces, grading_functional, hilbert_basis)
from .errors import (BudgetExceeded, DimensionMismatch, ImageNotContained,
                     InsufficientDepth, NonSurjectiveConnect, NotPointed,
                     ProtoricError, TowerStructureError, UnsupportedRegime)
from .lattice import (FinSuppVec, OmegaPrefix, SmithDecomposition,
                      kernel_basis, leveling_index, smith_normal_form,
                      solve_integer, specker_pair)
from .semigroups import (AffineSemigroup, Factorization, KernelCongruence,
                         SemigroupHom, congruence_holds, group_completion,
                         hom_build, member, positive_grading, saturate,
                         semigroup_equal, semigroup_from_generators)
from .toric import (Point, ToricLevel, ToricTower, TorusElement, act,
                    binomials_up_to_degree, characters_and_one_params,
                    dual_point_map, dualize_hom, dualize_tower,
                    evaluate_point, hom_of, idempotent_points,
                    point_from_values, semigroup_of, variety_from_semigroup)
from .towers import (CanonicalEmbedding, CauchyReport, ProAffineTower,
                     TowerElement, TowerHom, canonical_embedding,
                     cauchy_check, element_check, family_tower,
                     filtration_related, sub_tower_limit_membership,
                     tower_build, tower_extend, tower_hom_build)

__version__ = "0.1.0"
