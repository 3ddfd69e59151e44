# blockdet: determinants and permanents of matrices via the block structure of their digraphs.
from .blockcompute import compute, det_blockwise, per_blockwise, trace_terms
from .blocks import BlockDecomposition, decompose
from .graph import as_matrix, from_matrix

__version__ = "1.0.0"
