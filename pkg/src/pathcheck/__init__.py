"""Exact verification of path, transport and box filling laws in
finite groupoid models.

Everything is computed with explicit finite presentations and checked
as on-the-nose equality of maps; no law is sampled or approximated.
The package is organized bottom up:

  groupoids    finite groupoids, functors, verdicts
  names        the canonical name order behind all determinism
  limits       chosen terminal object, products, pullbacks
  enumeration  exhaustive functor enumeration under size guards
  cylinder     intervals, cylinders, path object factorizations
  universe     classifiers of named fibers and their path types
  fibration    chosen cylinder lifts, sections, connections
  identity     path induction and its laws
  kan          cubes, boxes, the Leibniz calculus, box filling
  modelspec    declarative JSON models
  suites       the seven check suites over a loaded model
  report       deterministic JSON and markdown reports
  cli          the pathcheck command
"""

from .groupoids import (CompositionError, FinGroupoid, GroupoidMap,
                        ModelError, Verdict, bz2, check_functor,
                        constant_map, discrete_groupoid, identity_map,
                        terminal_groupoid)
from .limits import (CommutingSquare, Product, PullbackSquare,
                     is_pullback, product, pullback, to_terminal)
from .enumeration import (DEFAULT_GUARD, SizeGuard, SizeGuardError,
                          count_maps, enumerate_maps)
from .cylinder import (CylinderStructure, IntervalObject,
                       PathObjectFactorization, check_pullback_stability,
                       pathobject, relative_pathobject, trivial_interval,
                       walking_iso_interval)
from .universe import (ClassifierUniverse, PathTypeStructure, classify,
                       standard_groupoid_universe, standard_set_universe)
from .fibration import (Connection, LiftingStructure, SectionForm,
                        build_connection, check_cylinder_lifting,
                        check_normal, check_uniform, classifier_lift,
                        find_section, is_isofibration,
                        lift_from_isofibration, lifts_from_section,
                        perturb_lift, pullback_lift, section_from_lifts)
from .identity import (IdElimStructure, IdIntroStructure, MotiveContext,
                       brute_force_eliminators, check_elim_laws,
                       check_substitution_laws,
                       check_substitution_stability, j_eliminator,
                       motive_context)
from .kan import (KanStructure, PullbackHom, Subobject,
                  adjunction_transpose_check, boundary,
                  brute_force_box_fillers, check_kan,
                  check_kan_enumerative, check_kan_families,
                  check_path_power_identity, check_weak_orthogonality,
                  cube, enumerate_box_problems, face, leibniz_identities,
                  open_box, pullback_hom, pushout_product,
                  verify_box_filler)
from .modelspec import (ModelSpec, ModelSpecError, SUITE_ORDER,
                        build_model, bundled_model_path, load_model)
from .suites import run_suites
from .report import Report, SuiteResult

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
