"""Shared exception types.

DomainError: input is well-formed but outside the mathematical domain
of the operation (disconnected hypergraph where a connected one is
required, composition index out of range, invalid construct, ...).

UsageError: malformed input (bad JSON, schema violation, bad CLI args).
Carries an optional path locating the offending element.
"""


class DomainError(ValueError):
    pass


class UsageError(ValueError):
    def __init__(self, message, path=None):
        if path:
            message = "%s (at %s)" % (message, path)
        super().__init__(message)
        self.path = path
