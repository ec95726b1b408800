"""Second moments of the first few chaoses: exact values, Monte Carlo and bounds."""
# %% first chaos: quadrature against time scaling
from pamlab import make_profile, moments

profile = make_profile(0.7, [0.3])
kappa = moments.growth_exponent(profile)
for t in (0.5, 1.0, 2.0):
    est = moments.moment_n1_exact(t, profile)
    print(f"t={t}: E u1^2 = {est.value:.6f}, t^kappa ratio {est.value / t**kappa:.6f}")

# %% second chaos by Monte Carlo; the estimate is an upper surrogate
q = moments.MomentQuery(2, 1.0, profile, samples=200_000)
est = moments.moment_mc(q)
print(f"n=2 surrogate {est.value:.4f} +- {est.std_error:.4f}, flags {est.flags}")

# %% fit the time exponent n * kappa from three times
ts = (0.5, 1.0, 2.0)
ests = [moments.moment_mc(moments.MomentQuery(2, t, profile, 200_000, seed=k)) for k, t in enumerate(ts)]
print(f"fitted {moments.fit_time_exponent(ts, ests):.3f}, expected {2 * kappa:.3f}")

# %% upper bounds for a profile whose bound has the closed Dirichlet form
rough = make_profile(0.7, [0.5])
for n in range(1, 6):
    print(n, moments.moment_upper_bound(moments.MomentQuery(n, 1.0, rough)).value)

# %% at the edge of the finite region the truncated integrals stop decaying
rep = moments.divergence_probe(make_profile(0.5, [0.2]))
print(rep)
print("diverges:", rep.values["diverges"])
