"""Haar systems on finite groupoids and step subgroup bundles"""

from .groupoid import FiniteGroupoid, action_groupoid, group_bundle, \
    pair_groupoid, product_groupoid, validate_groupoid
from .decompose import orbit_partition, quotient_principal, \
    stability_groupoid
from .haar import HaarSystem, enumerate_invariant_systems, \
    principal_haar_from_lambda, synthesize_haar, verify_haar
from .measures import uniform_coherent
from .stepbundle import StepSubgroupBundle, build_coherent, \
    coherent_exists, is_open_projection
