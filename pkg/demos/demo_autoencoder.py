#!/usr/bin/env python3
"""Train a small tanh autoencoder with GD, NAG and RUD on synthetic images.

A scaled-down version of the handwritten-digit reconstruction benchmark:
28x28 blob images, a 784-64-16-64-784 network, binary cross-entropy on
the sigmoid output layer, minibatch updates with mu_t = 1 - 3/(5+t).
Momentum-based methods pull ahead of GD within a few epochs; NAG and RUD
track each other closely.  Uses a reduced image count so the demo runs in
seconds; bump COUNT/EPOCHS for the desk-scale benchmark numbers.
"""

import numpy as np

from rudopt import (
    MLPAutoencoder,
    Method,
    initial_state,
    make_schedule,
    make_synthetic_images,
    minibatches,
    step_gd,
    step_nag,
    step_rud,
)

COUNT, EPOCHS, BATCH, ALPHA, SEED = 600, 8, 100, 0.05, 1

data = make_synthetic_images(COUNT, SEED)
model = MLPAutoencoder((784, 64, 16, 64, 784))
theta0 = model.init_params(SEED)
sched = make_schedule("nesterov", ALPHA)

steppers = {
    Method.GD: lambda s, f, t: step_gd(s, f, sched.alpha(t)),
    Method.NAG: lambda s, f, t: step_nag(s, f, sched.alpha(t), sched.mu(t)),
    Method.RUD: lambda s, f, t: step_rud(s, f, sched.alpha(t), sched.mu(t)),
}

print(f"{COUNT} synthetic 28x28 images, net {model.layer_sizes}, "
      f"batch {BATCH}, alpha {ALPHA}\n")
print("per-epoch mean training BCE:")
print(f"  {'epoch':>5s}" + "".join(f"{m.value:>10s}" for m in steppers))

curves = {m: [] for m in steppers}
for method, stepper in steppers.items():
    state = initial_state(theta0)
    t = 1
    for epoch in range(1, EPOCHS + 1):
        losses = []
        for idx in minibatches(data, BATCH, SEED + epoch):
            f = model.objective(data.images[idx])
            losses.append(f.eval(state.theta))
            state = stepper(state, f, t)
            t += 1
        curves[method].append(np.mean(losses))

for epoch in range(EPOCHS):
    print(f"  {epoch + 1:>5d}" + "".join(f"{curves[m][epoch]:>10.4f}" for m in steppers))

print("\nfull benchmark with CSV output:")
print("  rudopt autoencoder --epochs 20 --out autoencoder.csv   (synthetic images)")
print("  rudopt autoencoder --data train-images-idx3-ubyte --layers 784,1000,500,250,30,250,500,1000,784 \\")
print("      --epochs 20 --out autoencoder.csv                  (IDX file, paper-scale net)")
