"""Shared fan corpus used across the test modules."""

from coxkernel import Fan

P1 = Fan(1, [(1,), (-1,)], [(0,), (1,)])
P2 = Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
P121 = Fan(2, [(1, 0), (0, 1), (-1, -2)], [(0, 1), (1, 2), (2, 0)])
HIRZEBRUCH_F1 = Fan(2, [(1, 0), (0, 1), (-1, 1), (0, -1)], [(0, 1), (1, 2), (2, 3), (3, 0)])
A1_CHART = Fan(2, [(1, 0), (1, 2)], [(0, 1)])
QUADRIC_CHART = Fan(3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)], [(0, 1, 2, 3)])
P1XP1 = Fan(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (2, 1), (1, 3), (3, 0)])
NONCOMPLETE = Fan(2, [(1, 0), (0, 1)], [(0,), (1,)])
A2 = Fan(2, [(1, 0), (0, 1)], [(0, 1)])

CLASS_GROUP_CORPUS = {
    "P1": P1,
    "P2": P2,
    "P121": P121,
    "F1": HIRZEBRUCH_F1,
    "A1": A1_CHART,
    "QUADRIC": QUADRIC_CHART,
}

VERIFIER_CORPUS = dict(CLASS_GROUP_CORPUS, P1xP1=P1XP1, NONCOMPLETE=NONCOMPLETE)
