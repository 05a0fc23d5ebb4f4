"""Exception types shared across the toolkit."""


class StiloError(Exception):
    """Base class for toolkit errors."""


class DataError(StiloError):
    """Malformed, degenerate, or missing input data."""


class OracleError(StiloError):
    """The MT oracle failed or violated its line protocol."""
