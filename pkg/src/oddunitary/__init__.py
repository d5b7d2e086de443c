"""Exact-arithmetic workbench for odd hyperbolic unitary groups over finite rings.

Construction of the groups and their presentations, exhaustive verification
of the defining relations and commutator identities, normal forms in the
unipotent subgroups, and the central-extension splitting construction on
concrete product extensions.
"""

from .forms import (
    ExplicitParameter,
    MaxParameter,
    MinParameter,
    OddQuadraticSpace,
    form_eval,
    heis_act,
    heis_add,
    heis_neg,
    make_space,
    orthogonal_sum,
    span_form_parameter,
    verify_antihermitian,
    verify_form_parameter,
    zero_space,
)
from .generators import Xi, Xij, format_word, parse_word
from .hyperbolic import (
    GroupClosure,
    HyperbolicSpace,
    commutator_closure,
    enumerate_eu,
    eps,
    equiv_mod_param,
    eu_generators,
    is_isometry,
    make_hyperbolic,
    subgroup_closure,
    unitary_member,
)
from .matrices import Mat
from .report import CapExceeded, CheckResult, NotInvertible, Report, WorkbenchError
from .rings import involve, make_ring, verify_pseudo_involution, verify_ring_axioms
from .steinberg import (
    U1NormalForm,
    eval_word,
    perfect_witness,
    relation_instance,
    stabilize,
    u1_decompose,
    u1_uniqueness_check,
    verify_relations,
)
from .extensions import (
    ProductExtension,
    build_section,
    check_dagger,
    comm_preimages,
    product_extension,
    s_i,
    s_ij,
    verify_section,
)
from .freewords import comm, conj, reduce_word, verify_identities, verify_identity

__version__ = "0.1.0"
