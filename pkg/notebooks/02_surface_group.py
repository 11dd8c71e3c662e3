# %% [markdown]
# # The genus-2 surface group
#
# Same construction over <A, B, C, D | [A,B][C,D]>, with C and D sent to zero
# in Z/2 x Z/3.  The word problem is solved by Dehn's algorithm, and the
# isomorphism psi is shipped with both directions, since there is no folding
# to invert it here.

# %%
from commensurators import build_bs_pair, decide_comm_word, is_trivial, sequential_evaluate, surface_group
from commensurators.cli import printed_surface_word10
from commensurators.comm import GAMMA_COMM_WORD, load_shipped_iso
from commensurators.subgroups import surface_relators

S = surface_group()
rep = load_shipped_iso("psi_surface")
print("indices:", rep.domain.index(), rep.codomain.index())
print("Schreier generators of K1:", len(rep.domain.schreier.generators))
print("relators of K1 (one per coset):", len(surface_relators(rep.domain.schreier)))

# %%
psi, phi = build_bs_pair(S, 2, 3, rep)
print("psi(A^-2) =", psi(S.word("A^-2")))

# %% [markdown]
# Evaluate gamma at C.  Surface words have no normal form, so the result is
# compared with a reference output through the word problem rather than
# letter by letter.

# %%
out = sequential_evaluate({"a": psi, "b": phi}, GAMMA_COMM_WORD, S.word("C"))
ref = S.word(printed_surface_word10())
print("length of output:", len(out), " length of reference:", len(ref))
print("equal in the group:", is_trivial(S, out * ref.inverse()))
print("equal to C:", is_trivial(S, out * S.word("C^-1")))

# %%
trivial, witness = decide_comm_word({"a": psi, "b": phi}, GAMMA_COMM_WORD)
print("trivial:", trivial)
print("moved generator:", witness[0])
