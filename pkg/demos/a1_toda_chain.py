# Solve the rank-one q-Toda recursion and compare with global Weyl characters
from zastava.demazure import demazure_character, global_weyl_character
from zastava.exactalg import rc_equal, to_text
from zastava.rootdata import build_folding
from zastava.toda import eigencheck, load_operator, solve_whittaker

A1 = build_folding("A1")
op = load_operator("a1_toda")
box = 5
table = solve_whittaker(op, box)

for m in range(box + 1):
    psi = table[(m,)]
    via_demazure = global_weyl_character(A1, demazure_character(A1, (m,)), (m,))
    print(m, to_text(psi), "ok" if rc_equal(psi, via_demazure) else "MISMATCH")

# residuals at height m read the entry at m+1, so stop one short of the box
rep = eigencheck(op, table, box - 1)
print("eigencheck:", "passed" if rep.passed else rep.failures)
