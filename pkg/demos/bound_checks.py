"""Numerical checks of the singular-integral bounds used by the moment estimates."""
# %% the two-gap block sits below its sharp HLS bound
from pamlab import singint

print(singint.verify_I1(0.3, 0.4))

# %% the two-interval integral against its two-term bound
rep = singint.verify_mainterm(0.2, 0.3, 0.4, q2=0.2)
print(rep)
print("ratio", round(rep.values["ratio"], 4))

# %% a one-dimensional envelope and the discrete HLS inequality
print(singint.verify_lemma_l32(0.6, 0.7))
print(singint.sweep_hls(5).summary())

# %% small seeded sweeps over random exponents
for sweep in (singint.sweep_frakB, singint.sweep_l32):
    print(sweep(10).summary())
