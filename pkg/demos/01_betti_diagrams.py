"""Betti diagrams of a few small codes.

A regularity-2 code has a two-row diagram: row 1 is the linear strand
beta_{i,i+1}, row 2 is beta_{i,i+2}.  The script prints the diagrams of the
Hamming code, the ternary Golay code and the [9,8] parity code, and checks the
last one against its closed form.
"""

from syzkit.bounds import closed_form_diagram
from syzkit.codes import golay_ternary, hamming_code, parity_code
from syzkit.gf import field_of_order
from syzkit.syzygy import betti_diagram_reg2


def show(title, C):
    diag = betti_diagram_reg2(C)
    print(f"{title}: [{C.n},{C.k}]_{C.q}")
    print(diag.format())
    print()
    return diag


show("Hamming", hamming_code())
show("ternary Golay", golay_ternary())
diag = show("parity", parity_code(8, field_of_order(2)))
cf = closed_form_diagram("parity", 8)
print("parity diagram equals the closed form:", (diag.row1, diag.row2) == (cf.row1, cf.row2))
