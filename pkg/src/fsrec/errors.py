class ContractViolation(ValueError):
    """Raised when an operation is called outside its precondition."""


class TreeViolation(ValueError):
    """Raised when a map of node values does not have the tree property."""

    def __init__(self, node, message=None):
        self.node = node
        super().__init__(message or f"tree property violated at {node}")
