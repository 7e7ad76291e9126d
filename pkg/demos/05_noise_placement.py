"""Where should the noise sit?  Compare the five placements of one noise kind.

The chains are checked at p = 0.7 and p = 1.  The curves cross at lower p,
so the orderings are statements about those two strengths only.
"""

from qutrit_teleport.reports import render_table1, table1

print(render_table1(table1([0.7, 1.0])))
