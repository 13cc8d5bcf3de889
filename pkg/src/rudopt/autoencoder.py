"""From-scratch MLP autoencoder: tanh hidden layers, sigmoid output, BCE loss.

The architecture object is immutable; parameters travel as a single
flattened float64 vector so the optimizers can treat training as descent
on an ordinary objective.  Gradients come from reverse-mode accumulation
through the layers.
"""

from dataclasses import dataclass

import numpy as np

from .objectives import Objective

__all__ = ["MLPAutoencoder", "mlp_eval_grad", "BCE_CLAMP"]

# Reconstructions are clamped to [eps, 1-eps] before the logs so a
# saturated sigmoid cannot produce an infinite loss.
BCE_CLAMP = 1e-7


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass(frozen=True)
class MLPAutoencoder:
    """Fully connected autoencoder J(theta) = mean BCE(x, reconstruct(x; theta)).

    layer_sizes runs input..output, e.g. (784, 64, 16, 64, 784); the first
    and last entries must match the pixel dimension of the batches fed in.
    Hidden activations are tanh, the output activation is the logistic
    sigmoid (BCE needs outputs in (0, 1)).
    """

    layer_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.layer_sizes)
        if len(sizes) < 2 or any(s < 1 for s in sizes):
            raise ValueError(f"invalid layer sizes {self.layer_sizes}")
        if sizes[0] != sizes[-1]:
            raise ValueError("autoencoder input and output widths must match")
        object.__setattr__(self, "layer_sizes", sizes)

    @property
    def n_params(self) -> int:
        return sum((fi + 1) * fo for fi, fo in self._shapes())

    def _shapes(self):
        return list(zip(self.layer_sizes[:-1], self.layer_sizes[1:]))

    def init_params(self, seed: int) -> np.ndarray:
        """Seeded uniform init in [-s, s] with s = sqrt(6 / (fan_in + fan_out))."""
        rng = np.random.default_rng(seed)
        chunks = []
        for fan_in, fan_out in self._shapes():
            s = np.sqrt(6.0 / (fan_in + fan_out))
            chunks.append(rng.uniform(-s, s, size=fan_in * fan_out))
            chunks.append(np.zeros(fan_out))
        return np.concatenate(chunks)

    def unflatten(self, theta):
        """Split a flat parameter vector into per-layer (W, b) pairs."""
        theta = np.asarray(theta, dtype=np.float64)
        if theta.shape != (self.n_params,):
            raise ValueError(f"expected {self.n_params} parameters, got {theta.shape}")
        layers, offset = [], 0
        for fan_in, fan_out in self._shapes():
            w = theta[offset:offset + fan_in * fan_out].reshape(fan_in, fan_out)
            offset += fan_in * fan_out
            b = theta[offset:offset + fan_out]
            offset += fan_out
            layers.append((w, b))
        return layers

    def flatten(self, layers) -> np.ndarray:
        return np.concatenate([np.concatenate([w.ravel(), b]) for w, b in layers])

    def forward(self, theta, batch) -> np.ndarray:
        """Reconstructions for a batch (rows are flattened images in [0, 1])."""
        batch = np.atleast_2d(np.asarray(batch, dtype=np.float64))
        a = batch
        layers = self.unflatten(theta)
        for i, (w, b) in enumerate(layers):
            z = a @ w + b
            a = _sigmoid(z) if i == len(layers) - 1 else np.tanh(z)
        return a

    def eval_grad(self, theta, batch):
        """Mean BCE over the batch and its gradient wrt the flat parameters."""
        batch = np.atleast_2d(np.asarray(batch, dtype=np.float64))
        if batch.shape[0] == 0:
            raise ValueError("batch must be nonempty")
        if batch.shape[1] != self.layer_sizes[0]:
            raise ValueError(
                f"batch pixel dimension {batch.shape[1]} does not match "
                f"input width {self.layer_sizes[0]}"
            )
        layers = self.unflatten(theta)

        activations = [batch]
        a = batch
        for i, (w, b) in enumerate(layers):
            z = a @ w + b
            a = _sigmoid(z) if i == len(layers) - 1 else np.tanh(z)
            activations.append(a)

        recon = np.clip(activations[-1], BCE_CLAMP, 1.0 - BCE_CLAMP)
        n = batch.size
        loss = -float(np.sum(batch * np.log(recon) + (1.0 - batch) * np.log1p(-recon))) / n

        # sigmoid + BCE collapse to (recon - x) at the output pre-activation
        delta = (activations[-1] - batch) / n
        grads = [None] * len(layers)
        for i in range(len(layers) - 1, -1, -1):
            w, _ = layers[i]
            a_prev = activations[i]
            grads[i] = (a_prev.T @ delta, delta.sum(axis=0))
            if i > 0:
                delta = (delta @ w.T) * (1.0 - activations[i] ** 2)

        return loss, self.flatten(grads)

    def objective(self, batch) -> Objective:
        """The autoencoder loss on a fixed batch as a plain objective."""
        return _BatchObjective(self, np.atleast_2d(np.asarray(batch, dtype=np.float64)))


class _BatchObjective(Objective):
    def __init__(self, model, batch):
        self.model = model
        self.batch = batch
        self.dim = model.n_params

    def eval(self, theta) -> float:
        batch = self.batch
        recon = np.clip(self.model.forward(theta, batch), BCE_CLAMP, 1.0 - BCE_CLAMP)
        return -float(np.sum(batch * np.log(recon) + (1.0 - batch) * np.log1p(-recon))) / batch.size

    def grad(self, theta) -> np.ndarray:
        return self.model.eval_grad(theta, self.batch)[1]

    def eval_grad(self, theta):
        return self.model.eval_grad(theta, self.batch)


def mlp_eval_grad(m: MLPAutoencoder, theta, batch):
    """Loss and flattened-parameter gradient of `m` on `batch`."""
    return m.eval_grad(theta, batch)
