# rankforge/worked_examples.py
"""Reference inputs with known answers, shared by scripts/reproduce_examples.py and the tests."""

# Three players: 1 beats 2 and draws 3, 2 beats 3
ROUND_ROBIN_A = ((0.0, 1.0, 0.5), (0.0, 0.0, 1.0), (0.5, 0.0, 0.0))

# Reducible: 1 beats everyone, 2 and 3 draw. Dominant eigenpair ½, (⅔, ⅙, ⅙)
ROUND_ROBIN_A1 = ((0.0, 1.0, 1.0), (0.0, 0.0, 0.5), (0.0, 0.5, 0.0))

# Nilpotent: 1 beats 2 and 3, 2 beats 3. Limit shares (1, 0, 0), λ = 0
ROUND_ROBIN_A2 = ((0.0, 1.0, 1.0), (0.0, 0.0, 1.0), (0.0, 0.0, 0.0))

# Voting example with ½ on the diagonal
KENDALL = (
    (0.5, 1.0, 1.0, 0.0, 1.0, 1.0),
    (0.0, 0.5, 0.0, 1.0, 1.0, 0.0),
    (0.0, 1.0, 0.5, 1.0, 1.0, 1.0),
    (1.0, 0.0, 0.0, 0.5, 0.0, 0.0),
    (0.0, 0.0, 0.0, 1.0, 0.5, 1.0),
    (0.0, 1.0, 0.0, 1.0, 0.0, 0.5),
)

KENDALL_TEXT = """\
1/2 1 1 0 1 1
0 1/2 0 1 1 0
0 1 1/2 1 1 1
1 0 0 1/2 0 0
0 0 0 1 1/2 1
0 1 0 1 0 1/2
"""

A_GAMES = """\
p1,p2,1-0
p1,p3,1/2-1/2
p2,p3,1-0
"""

A1_GAMES = """\
p1,p2,1-0
p1,p3,1-0
p2,p3,1/2-1/2
"""

A2_GAMES = """\
p1,p2,1-0
p1,p3,1-0
p2,p3,1-0
"""

# A links to B and C, B to C, C to A. Ranks (0.4, 0.2, 0.4) with α = 0
PATENT_EDGES = """\
A B
A C
B C
C A
"""
