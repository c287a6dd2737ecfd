from . import exc
from .matrix.complex_matrix import ComplexMatrix
from .matrix.complex_matrix import Permutation
from .matrix.complex_matrix import RepetitionVector
from .matrix.complex_matrix import read_matrix
from .matrix.complex_matrix import write_matrix
from .matrix.matrix_util import (
    bandwidth,
    block_bandwidth,
    extract_principal,
    fdiag,
    interleave_perm,
    permute,
    repeat_pattern,
)
from .hafnian.brute import lhaf_brute, scaled_t_poly, t_poly, telephone
from .hafnian.banded import SubhafnianTableBanded, banded_tables, lhaf_banded
from .hafnian.banded_rep import (
    SubhafnianTableRep,
    convolve,
    lhaf_banded_rep,
    rep_tables,
)
from .hafnian.dispatch import lhaf_auto
from .gaussian.circuit import Beamsplitter, CircuitSpec, Phase, build_unitary
from .gaussian.state import (
    AdjacencyData,
    GaussianState,
    adjacency,
    bc_blocks,
    extended_adjacency,
    prepare_state,
    prob,
    reduce,
)
from .sampler.settings import SamplerConfig
from .sampler.pattern import (
    OVERFLOW,
    PhotonPattern,
    box_patterns,
    format_pattern,
    frequency_table,
    parse_pattern,
    total_variation_distance,
)
from .sampler.sampler import (
    Sampler,
    batch_sample,
    batch_sample_with_counters,
    conditional_dist,
    gbts_distribution,
    gbts_sample,
    random_stream,
)

from autoconf import conf

conf.instance.register(__file__)

__version__ = "2026.10.19.1"
