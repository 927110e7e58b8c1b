"""Error types shared across the package.

Exit-code mapping used by the CLI: config errors -> 2, numerical
non-convergence -> 3, truncation errors -> 4.
"""


class NongaussError(Exception):
    pass


class ConfigError(NongaussError):
    exit_code = 2


class TruncationTooSmall(NongaussError):
    exit_code = 4

    def __init__(self, tail, limit, msg=""):
        self.tail = tail
        self.limit = limit
        super().__init__(msg or f"basis truncation too small: tail mass {tail:.3e} > {limit:.3e}")


class IndexOverflow(NongaussError):
    exit_code = 4


class GridUnderflow(NongaussError):
    exit_code = 3


class DimensionLimit(NongaussError):
    exit_code = 2


class QuadratureUnconverged(NongaussError):
    exit_code = 3


class BranchSingularity(NongaussError):
    exit_code = 3


class ResonancePole(NongaussError):
    exit_code = 2


class TooFewSamples(NongaussError):
    exit_code = 2


class DomainError(NongaussError):
    exit_code = 2
