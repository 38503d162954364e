"""Quivers of sections and strong exceptional collections on toric varieties."""

from .cohomology import (
    cohomology_oracle,
    do_higher_self_exts_vanish,
    do_higher_self_exts_vanish_twisted,
    forbidden_sets,
    higher_cohomology_vanishes,
)
from .fanodb import (
    contraction_list,
    contraction_maps,
    do_higher_self_exts_vanish_chain,
    full_str_exc_coll,
    image_collection,
    smooth_fano,
)
from .positivity import bundles_nef_check, is_nef
from .quiver import QuiverOfSections, quiver_from_data, quiver_of_sections
from .sections import hom_basis, hom_dimension
from .toric import Fan, ToricVariety, anticanonical_class, from_wdiv_to_cl, is_line_bundle, make_variety

__all__ = [
    "Fan",
    "QuiverOfSections",
    "ToricVariety",
    "anticanonical_class",
    "bundles_nef_check",
    "cohomology_oracle",
    "contraction_list",
    "contraction_maps",
    "do_higher_self_exts_vanish",
    "do_higher_self_exts_vanish_chain",
    "do_higher_self_exts_vanish_twisted",
    "forbidden_sets",
    "from_wdiv_to_cl",
    "full_str_exc_coll",
    "hom_basis",
    "hom_dimension",
    "higher_cohomology_vanishes",
    "image_collection",
    "is_line_bundle",
    "is_nef",
    "make_variety",
    "quiver_from_data",
    "quiver_of_sections",
    "smooth_fano",
]
