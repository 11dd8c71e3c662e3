# %% [markdown]
# # Why gamma matters
#
# The endomorphism rho of BS(2,3) = <a, b | a b^2 a^-1 = b^3> fixing a and
# squaring b is onto, and it kills gamma.  The first two notebooks show that
# gamma acts nontrivially on F2 and on the surface group, so gamma is not
# the identity of BS(2,3) even though rho(gamma) is.

# %%
from commensurators import bs_kernel_witness_check, build_bs_pair, free_group
from commensurators.comm import comm_equal, compose, inverse, power

res = bs_kernel_witness_check()
print("gamma        ", res.gamma)
print("rho(gamma)   ", res.rho_gamma)
print("normalized   ", res.rho_gamma_normalized)
print("gamma itself ", res.gamma_normalized)

# %% [markdown]
# BS(1, n) sits inside Comm(F2) as well: psi(A) = A^n.

# %%
F = free_group()
for n in (2, 3, 4):
    psi, phi = build_bs_pair(F, 1, n)
    lhs = compose(psi, compose(phi, inverse(psi)))
    print(n, "psi(A) =", psi(F.word("A")), " relation holds:", comm_equal(lhs, power(phi, n)))
