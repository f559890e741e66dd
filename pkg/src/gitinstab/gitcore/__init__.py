"""The GIT layer: states of the diagonal torus, Hilbert-Mumford indices,
worst one-parameter subgroups, the group action and sampling over G."""
from .torus import (
    DestabResult,
    Mode,
    OneParamSubgroup,
    State,
    TorusContext,
    WorstResult,
    decimal_sqrt,
    destab_rays,
    exact_sqrt,
    hm_index,
    project_weight,
    weyl_orbit,
    worst_1ps_for_torus,
)
from .action import (
    GroupElement,
    TransportedOneParamSubgroup,
    act_on_form,
    permutation_matrices,
    pushforward_state,
    random_group_element,
    transport_1ps,
)
from .sampling import (
    FormTarget,
    GenericVerdict,
    HilbertTarget,
    SamplerCertificate,
    SamplerConfig,
    SearchResult,
    StateSource,
    Stratification,
    TorusCandidate,
    Verdict,
    all_destab_generators,
    check_generic_semistable,
    check_generic_stable,
    generic_state_sample,
    sample_group_elements,
    stratify_samples,
    worst_1ps_search,
)
