"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can print
``ERR <code> <detail>`` lines.
"""


class PSCError(Exception):
    code = "PSC"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail

    def line(self):
        return f"ERR {self.code} {self.detail}".rstrip()


class GraphError(PSCError):
    code = "Graph"


class ParseError(GraphError):
    code = "Parse"


class BadDegree(GraphError):
    code = "BadDegree"


class AngleTie(GraphError):
    code = "AngleTie"


class SlotCollision(AngleTie):
    code = "SlotCollision"


class NonPlanarEmbedding(GraphError):
    code = "NonPlanarEmbedding"


class Disconnected(GraphError):
    code = "Disconnected"


class LinkAbsent(GraphError):
    code = "LinkAbsent"


class CornersPaired(GraphError):
    code = "CornersPaired"


class NotAdjacent(GraphError):
    code = "NotAdjacent"


class NotUnpaired(GraphError):
    code = "NotUnpaired"


class NoSharedPlaquette(GraphError):
    code = "NoSharedPlaquette"


class PathError(PSCError):
    code = "Path"


class InvalidPath(PathError):
    code = "InvalidPath"


class SlotMissing(PathError):
    code = "SlotMissing"


class NotALoop(PathError):
    code = "NotALoop"


class NonSimpleLoop(PathError):
    code = "NonSimpleLoop"


class SegmentNotOnFace(PathError):
    code = "SegmentNotOnFace"


class OddOpenPath(PathError):
    code = "OddOpenPath"


class EndpointMismatch(PathError):
    code = "EndpointMismatch"


class PauliError(PSCError):
    code = "Pauli"


class NonHermitianAxis(PauliError):
    code = "NonHermitianAxis"


class NonHermitianObservable(PauliError):
    code = "NonHermitianObservable"


class StateError(PSCError):
    code = "State"


class NonCommuting(StateError):
    code = "NonCommuting"


class RankDeficient(StateError):
    code = "RankDeficient"


class Inconsistent(StateError):
    code = "Inconsistent"


class TooManyQubits(StateError):
    code = "TooManyQubits"


class ScenarioError(PSCError):
    code = "Scenario"


class ValidationFailed(ScenarioError):
    code = "ValidationFailed"

    def __init__(self, index, detail=""):
        super().__init__(f"instruction {index}: {detail}")
        self.index = index


class UnsupportedGeometry(ScenarioError):
    code = "UnsupportedGeometry"


class BackendDivergence(ScenarioError):
    code = "BackendDivergence"
