# %% [markdown]
# # Baumslag-Solitar images in Comm(F2)
#
# Conjugation by A is a commensurator phi of F2 = <A, B>.  The kernels K1, K2
# of the two maps F2 -> Z/2 x Z/3 (A, B sent to the generators, then swapped)
# are free of rank 7, and an isomorphism psi: K1 -> K2 with psi(A^2) = A^3
# gives a second commensurator.  Together they satisfy psi phi^2 psi^-1 = phi^3.

# %%
from commensurators import build_bs_pair, decide_comm_word, free_group, is_identity, power, sequential_evaluate
from commensurators.comm import GAMMA_COMM_WORD, load_shipped_iso

F = free_group()
psi_rep = load_shipped_iso("psi_free")
K1, K2 = psi_rep.domain, psi_rep.codomain
print("index of K1, K2:", K1.index(), K2.index())
print("Schreier basis of K1:")
for t in K1.schreier.generator_words():
    print("   ", t, "->", psi_rep(t))

# %% [markdown]
# The inverse of psi was not shipped; it comes from folding the images into a
# Stallings graph and reading the codomain basis off it.

# %%
inv = psi_rep.inverse()
for t in K2.schreier.generator_words():
    print(t, "<-", inv(t))

# %%
psi, phi = build_bs_pair(F, 2, 3, psi_rep)
print("psi(A^-2) =", psi(F.word("A^-2")))
print("phi^t trivial for t = 1..5:", [is_identity(power(phi, t)) for t in range(1, 6)])

# %% [markdown]
# The BS(2,3) word gamma = b^-1 a b a^-1 b^-1 a b a^-1 b^-1 with a -> psi and
# b -> phi.  Apply it letter by letter, right to left, to B A B^-1 A^-1.

# %%
letters = {"a": psi, "b": phi}
trace = []
out = sequential_evaluate(letters, GAMMA_COMM_WORD, F.word("B*A*B^-1*A^-1"), trace)
for k, w in enumerate(trace, start=2):
    print(f"Word{k}:", w)

# %% [markdown]
# The same answer from composing first: the product commensurator is not the
# identity, and the witness is the generator it moves.

# %%
trivial, witness = decide_comm_word(letters, GAMMA_COMM_WORD)
print("trivial:", trivial)
print("witness:", witness[0], "->", witness[1])

# %% [markdown]
# The automatic psi (A^2 -> A^3, remaining basis elements in order) is a
# different isomorphism but gives the same verdict.

# %%
psi2, phi2 = build_bs_pair(F, 2, 3)
print(sequential_evaluate({"a": psi2, "b": phi2}, GAMMA_COMM_WORD, F.word("B*A*B^-1*A^-1")))
print("trivial:", decide_comm_word({"a": psi2, "b": phi2}, GAMMA_COMM_WORD)[0])
