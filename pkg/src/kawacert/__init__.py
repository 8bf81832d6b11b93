"""kawacert: validated-numerics certificates for a Kawahara soliton.

The pipeline proves existence of an even soliton on the line, encloses the
first three eigenvalues of the linearization, excludes the rest of the
spectrum below/between them, and certifies orbital stability.  Everything
certified is carried by outward-rounded intervals.
"""

from .intervals import Interval, IArray, op_norm2_upper, verified_solve
from .sequences import FourierSeq, DiagSymbol, SeqOperator, conv, project, sample

__all__ = [
    "Interval",
    "IArray",
    "op_norm2_upper",
    "verified_solve",
    "FourierSeq",
    "DiagSymbol",
    "SeqOperator",
    "conv",
    "project",
    "sample",
]

__version__ = "0.1.0"
