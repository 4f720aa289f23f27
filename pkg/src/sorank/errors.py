"""Toolkit error hierarchy.

Every error carries a short machine-readable code that the CLI prints on
the error stream as ``error: <code>: <message>``.
"""


class ToolkitError(Exception):
    code = "E_PARAM"


class ParamError(ToolkitError):
    """Invalid or out-of-range parameter."""

    code = "E_PARAM"


class BudgetError(ToolkitError):
    """A randomized search exhausted its retry budget."""

    code = "E_BUDGET"


class SizeError(ToolkitError):
    """An enumeration would exceed the configured size limit."""

    code = "E_SIZE"


class FormatError(ToolkitError):
    """Malformed serialized input (code file, config file, header)."""

    code = "E_FORMAT"
