"""Stack sorting through pattern-avoiding stacks.

Permutation and pattern primitives, the right-greedy sorting machine,
sorting-class and preimage analysis, orbit dynamics, reference sequences,
and an exhaustive verification registry over small symmetric groups.
"""

from .analysis import (
    DynamicsReport,
    PreimageReport,
    SortingClassResult,
    dynamics,
    image_counts,
    max_preimages,
    preimages,
    smoothing_step,
    sorting_class,
    valid_movement_sequences,
)
from .checks import (
    REGISTRY,
    CheckReport,
    Counterexample,
    registry_listing,
    run_check,
    run_many,
)
from .machine import (
    CATALOG,
    LENGTH3_CATALOG,
    ONE_GAP_CATALOG,
    MapComparison,
    StackTrace,
    make_sorter,
    maps_agree,
    sort_iterate,
    sort_once,
    sort_output,
)
from .patterns import (
    MU_132,
    MU_2413,
    MeshPattern,
    PatternSyntaxError,
    VincularPattern,
    avoids_all,
    classical,
    complement_pattern,
    consecutive,
    contains_mesh,
    contains_vincular,
    enumerate_avoiders,
    is_reverse_layered,
    parse_pattern,
    parse_pattern_set,
    parse_vincular,
    reverse_pattern,
)
from .perms import (
    Decomposition,
    Perm,
    PermSyntaxError,
    ScanLimitError,
    complement,
    identity,
    iterate_symmetric_group,
    ltr_min_decompose,
    order_isomorphic,
    perm_from_text,
    perm_to_text,
    reverse,
    split_at_max,
    standardize,
)
from .sequences import catalan, eval_named, fetch_oeis, motzkin, schroder

__version__ = "0.1.0"
