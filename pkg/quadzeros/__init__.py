"""
quadzeros: zeros of polynomial sequences from a four-term recurrence
Reality verdicts, the zero-containing interval, the theta parametrization
and limit-set tests.
"""

__version__ = "1.0.0"

from quadzeros.errors import QuadZerosError, InvalidParams  # noqa: F401
from quadzeros.recurrence import GeneralParams, NormParams, gen_H, gen_P  # noqa: F401
