"""Ljusternik-Schnirelmann categories on finite topological spaces."""

from .finspace import (FinSpace, ContMap, PointSet, SpaceError, UndecidedError,
                       are_homotopic, build_space, builtin_space,
                       enumerate_self_maps_homotopic_to_id, find_beat_points,
                       homotopy_oracle, identity_map, is_contractible_in,
                       is_normal, load_space)
from .cover import INF, TCollectionSpec, min_cover, nu_H, nu_LS, nu_T, t_of_nu
from .cohom import (CohomClass, CohomologyData, SimplicialComplex,
                    builtin_complex, cuplength, face_poset,
                    is_cohomologically_trivial, load_complex, nu_CL, nu_c,
                    order_complex)
from .framework import (CategoryFn, PrecategoryFn, bar, category_nu_CL,
                        category_nu_H, category_nu_LS, category_nu_c,
                        check_axioms, check_t_cover_bound, check_closure_equality,
                        check_galois_identities, nu_from_T, T_from_nu, tilde)
from .harness import GenConfig, gen_posets, run_full_report

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
