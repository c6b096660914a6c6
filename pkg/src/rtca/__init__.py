"""rtca: cellular-automaton constructions for real-time language
recognition, with brute-force verification harnesses."""

from ._kernels import HAVE_COMPILED
from .core import MOORE_2D, STD_1D, Automaton, Configuration, step_global
from .recognition import MarkedWord, Recognizer, accepts, accepts_at, mark_at

__version__ = "0.1.0"
__all__ = [
    "HAVE_COMPILED", "Automaton", "Configuration", "MarkedWord",
    "Recognizer", "MOORE_2D", "STD_1D", "accepts", "accepts_at",
    "mark_at", "step_global", "__version__",
]
