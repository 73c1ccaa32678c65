"""Exception types shared by all modules.

Every error carries a short machine-readable ``kind`` so the CLI can report
which invariant was violated.
"""


class KLRWError(Exception):
    kind = "Error"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.kind}: {self.message}" if self.message else self.kind


def _make(name, doc):
    return type(name, (KLRWError,), {"kind": name, "__doc__": doc})


LoopEdge = _make("LoopEdge", "An arrow from a node to itself.")
DuplicateEdge = _make("DuplicateEdge", "Two arrows between the same pair of nodes.")
UnknownNode = _make("UnknownNode", "A node identifier that was never declared.")
NegativeDimension = _make("NegativeDimension", "A negative dimension or framing.")
RedCollision = _make("RedCollision", "Two red points at the same angle.")
BlackCollision = _make("BlackCollision", "Two black points at the same angle.")
BlackOnRed = _make("BlackOnRed", "A black point placed on a red point.")
IndexOutOfRange = _make("IndexOutOfRange", "Point count or index does not match the quiver data.")
InvalidAngle = _make("InvalidAngle", "An angle outside [0, 1) or with a bad denominator.")
MismatchedConfigurations = _make(
    "MismatchedConfigurations", "Configurations that cannot be joined by a diagram."
)
NotABijection = _make("NotABijection", "A strand matching that is not a bijection.")
InvalidWord = _make("InvalidWord", "A word whose steps do not chain.")
RankMismatch = _make("RankMismatch", "Cocharacters or weights of different torus rank.")
InvalidInput = _make("InvalidInput", "Malformed input data.")
