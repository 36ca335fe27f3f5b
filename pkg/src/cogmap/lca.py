"""Latent class analysis over binary construct-presence features.

A map's feature vector records which canonical constructs it contains.  The
mixture model assumes the features are independent Bernoulli draws given a
hidden class:

    p(y, x_1..x_d) = q(y) * prod_j q_j(x_j, y)

Parameters are estimated with EM over random restarts; the class count is
selected by minimizing AIC = 2k - 2*logL with k = (Y-1) + Y*d.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NumericalError
from .maps import CausalMap
from .vocabulary import CANONICAL_IDS

#: Bernoulli parameters are clamped to [EPS, 1-EPS] to keep every row's
#: likelihood strictly positive.
EPS = 1e-4

_TINY_CLASS = 1e-12


@dataclass(frozen=True)
class FeatureMatrix:
    ids: tuple[str, ...]
    data: np.ndarray  # (n, 28) 0/1 matrix, columns in canonical order
    columns: tuple[str, ...] = CANONICAL_IDS

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class LcaModel:
    n_classes: int
    prior: np.ndarray  # (Y,), sums to 1
    conditionals: np.ndarray  # (Y, d), q_j(1, y)
    log_likelihood: float
    ll_history: tuple[float, ...]  # per-iteration log-likelihood of the winning run

    @property
    def d(self) -> int:
        return self.conditionals.shape[1]

    @property
    def n_params(self) -> int:
        return (self.n_classes - 1) + self.n_classes * self.d


@dataclass(frozen=True)
class Assignment:
    ids: tuple[str, ...]
    labels: np.ndarray  # (n,), argmax posterior class per respondent
    posteriors: np.ndarray  # (n, Y), rows sum to 1

    def members(self, label: int) -> frozenset[str]:
        return frozenset(rid for rid, lab in zip(self.ids, self.labels) if lab == label)

    def to_csv(self, path: str | Path) -> None:
        n_classes = self.posteriors.shape[1]
        header = "respondent_id,class," + ",".join(f"posterior_{y}" for y in range(n_classes))
        lines = [header]
        for i, rid in enumerate(self.ids):
            post = ",".join(format(v, ".17g") for v in self.posteriors[i])
            lines.append(f"{rid},{self.labels[i]},{post}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class AicRow:
    n_classes: int
    n_params: int
    log_likelihood: float
    aic: float


@dataclass(frozen=True)
class SelectionResult:
    best_y: int
    table: tuple[AicRow, ...]
    model: LcaModel

    def to_csv(self, path: str | Path) -> None:
        lines = ["Y,k,log_likelihood,AIC"]
        for row in self.table:
            lines.append(f"{row.n_classes},{row.n_params},"
                         f"{format(row.log_likelihood, '.17g')},{format(row.aic, '.17g')}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def features(dataset: list[CausalMap]) -> FeatureMatrix:
    """Binary construct-presence matrix; ses, customs and other excluded."""
    ids = tuple(m.respondent_id for m in dataset)
    data = np.zeros((len(dataset), len(CANONICAL_IDS)), dtype=np.int64)
    col = {cid: j for j, cid in enumerate(CANONICAL_IDS)}
    for i, m in enumerate(dataset):
        for cid in m.construct_ids():
            data[i, col[cid]] = 1
        if not data[i].any():
            warnings.warn(
                f"map {m.respondent_id!r} shares no construct with the canonical vocabulary",
                stacklevel=2)
    return FeatureMatrix(ids=ids, data=data)


def _logsumexp(a: np.ndarray, axis: int):
    m = np.max(a, axis=axis, keepdims=True)
    out = m + np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True))
    return np.squeeze(out, axis=axis)


def _log_weights(x: np.ndarray, prior: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """log q(y) + sum_j log q_j(x_j, y) for every row/class pair."""
    log_theta = np.log(theta)
    log_1m = np.log1p(-theta)
    with np.errstate(divide="ignore"):
        log_prior = np.log(prior)
    return x @ log_theta.T + (1 - x) @ log_1m.T + log_prior[None, :]


def _e_step(x, prior, theta):
    logw = _log_weights(x, prior, theta)
    log_norm = _logsumexp(logw, axis=1)
    resp = np.exp(logw - log_norm[:, None])
    return resp, float(log_norm.sum())


def _m_step(x, resp, theta_old):
    n = x.shape[0]
    weight = resp.sum(axis=0)
    prior = weight / n
    # A class with no responsibility keeps its previous conditionals; its
    # zero prior removes it from the mixture either way.
    safe = np.maximum(weight, _TINY_CLASS)
    theta = (resp.T @ x) / safe[:, None]
    theta = np.where(weight[:, None] < _TINY_CLASS, theta_old, theta)
    theta = np.clip(theta, EPS, 1 - EPS)
    return prior, theta


def em_run(features: FeatureMatrix, n_classes: int, rng: np.random.Generator,
           max_iter: int = 500, tol: float = 1e-8) -> LcaModel:
    """One EM run from random Dirichlet responsibilities."""
    x = features.data.astype(np.float64)
    n = features.n
    resp = rng.dirichlet(np.ones(n_classes), size=n)
    prior, theta = _m_step(x, resp, np.full((n_classes, features.d), 0.5))
    history = []
    prev = -np.inf
    for _ in range(max_iter):
        resp, ll = _e_step(x, prior, theta)
        if not np.isfinite(ll):
            raise NumericalError("non-finite log-likelihood during EM")
        history.append(ll)
        if ll - prev < tol:
            break
        prev = ll
        prior, theta = _m_step(x, resp, theta)
    return LcaModel(
        n_classes=n_classes,
        prior=prior,
        conditionals=theta,
        log_likelihood=history[-1],
        ll_history=tuple(history),
    )


def fit_em(features: FeatureMatrix, n_classes: int, *, seed: int = 0,
           restarts: int = 20, max_iter: int = 500, tol: float = 1e-8) -> LcaModel:
    """Best model over independently seeded restarts.

    Restart r uses the generator seeded from (seed, r), so restarts may be
    evaluated in any order or in parallel without changing the winner; ties
    go to the lowest restart index.
    """
    if n_classes < 1:
        raise ValueError("class count must be at least 1")
    if n_classes > features.n:
        raise ValueError(f"class count {n_classes} exceeds sample size {features.n}")
    best: LcaModel | None = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        model = em_run(features, n_classes, rng, max_iter=max_iter, tol=tol)
        if best is None or model.log_likelihood > best.log_likelihood:
            best = model
    assert best is not None
    return best


def select_classes(features: FeatureMatrix, y_range, *, seed: int = 0,
                   restarts: int = 20, max_iter: int = 500, tol: float = 1e-8) -> SelectionResult:
    """Fit every class count in y_range and keep the AIC minimizer (ties
    break toward fewer classes)."""
    ys = sorted(set(int(y) for y in y_range))
    if not ys or ys[0] < 1:
        raise ValueError("y_range must be a nonempty range of integers >= 1")
    rows = []
    best_row: AicRow | None = None
    best_model: LcaModel | None = None
    for y in ys:
        model = fit_em(features, y, seed=seed, restarts=restarts, max_iter=max_iter, tol=tol)
        row = AicRow(
            n_classes=y,
            n_params=model.n_params,
            log_likelihood=model.log_likelihood,
            aic=2.0 * model.n_params - 2.0 * model.log_likelihood,
        )
        rows.append(row)
        if best_row is None or row.aic < best_row.aic:
            best_row = row
            best_model = model
    assert best_row is not None and best_model is not None
    return SelectionResult(best_y=best_row.n_classes, table=tuple(rows), model=best_model)


def assign(model: LcaModel, features: FeatureMatrix) -> Assignment:
    """Hard argmax assignment with posteriors; ties go to the lowest class."""
    if model.d != features.d:
        raise ValueError(f"model width {model.d} != feature width {features.d}")
    x = features.data.astype(np.float64)
    posteriors, _ = _e_step(x, model.prior, model.conditionals)
    labels = np.argmax(posteriors, axis=1)
    return Assignment(ids=features.ids, labels=labels, posteriors=posteriors)
