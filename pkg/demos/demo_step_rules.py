#!/usr/bin/env python3
"""Walk through the step rules on the scalar quadratic J = theta^2/2.

Shows the hand-checkable first iterations for GD, MOM, NAG (all three
formulations) and RUD, and demonstrates that every momentum variant takes
the same first step from a standing start.
"""

import numpy as np

from rudopt import (
    Method,
    ScalarQuadratic,
    initial_state,
    make_schedule,
    run,
    step_gd,
    step_mom,
    step_nag,
    step_nag_original,
    step_nag_two_stage,
    step_rud,
)

f = ScalarQuadratic()
alpha, mu = 0.2, 0.9
gamma = (1 - mu) / alpha

print("J(theta) = theta^2/2, gradient = theta, start at theta = 1, v = 0")
print(f"alpha = {alpha}, mu = {mu}\n")

state = initial_state([1.0])
print("one step of each rule (theta', v'):")
print("  gd           ", step_gd(state, f, alpha).theta[0])
print("  mom          ", step_mom(state, f, alpha, mu).theta[0])
print("  nag          ", step_nag(state, f, alpha, mu).theta[0])
print("  nag-original ", step_nag_original([1.0], [1.0], f, alpha, mu)[0])
print("  nag-two-stage", step_nag_two_stage(state, f, alpha, gamma).theta[0])
print("  rud          ", step_rud(state, f, alpha, mu).theta[0])
print("-> identical first step theta2 = (1-alpha)*theta1 =", (1 - alpha) * 1.0)

print("\nthe rules separate from the second step on:")
sched = make_schedule("constant", alpha, mu)
for method in (Method.MOM, Method.NAG, Method.RUD):
    trace = run(method, f, [1.0], sched, 6)
    print(f"  {method.value:4s} theta_1..6 =", np.round(trace.thetas[:, 0], 6))

print("\nRUD evaluates the gradient at theta + v (full lookahead),")
print("NAG at theta + mu*v, MOM at theta itself; after t=2 RUD is ahead.")

print("\nthree NAG formulations, 50 iterations, max |difference| to velocity form:")
a = run(Method.NAG, f, [1.0], sched, 50).thetas
b = run(Method.NAG_ORIGINAL, f, [1.0], sched, 50).thetas
c = run(Method.NAG_TWO_STAGE, f, [1.0], sched, 50).thetas
print("  original :", np.max(np.abs(b - a)))
print("  two-stage:", np.max(np.abs(c - a)))
