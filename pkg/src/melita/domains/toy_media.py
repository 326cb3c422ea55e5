"""A desk-scale text/image domain with closed-form media metrics.

Texts are token sequences over a 64-token vocabulary classified against
a fixed 16-topic model (topic k prefers tokens 4k..4k+3 with mass 0.8);
an unclassifiable text is a death penalty. Images are small RGB float
arrays binned by edge complexity crossed with colourfulness. Coherence
embeds the image as 16 summary statistics, projects them through a
fixed matrix, and takes the cosine against the text's topic posterior.

Everything here is reproducible from first principles: the projection
matrix comes from a SplitMix64 stream with a documented seed, and
``constants_dict`` emits every constant an external oracle needs.

rng consumption, in order, per call:
- generate: topic = integers(16); length = integers(8, 65);
  tokens = choice(64, size=length, p=row); pixels = random((h, w, 3)).
- vary text: one uniform (full when < 0.2); full then draws topic,
  length, tokens as in generate; partial draws
  split = integers(len//3, 2*len//3 + 1) then the suffix via
  choice(64, size=len-split, p=top_topic_row).
- vary image: normal(0, sigma, (h, w, 3)); the blur draws nothing. The
  noise draw happens even when sigma is 0 so the stream shape is stable.
"""
from __future__ import annotations

import math

import numpy as np

from ..binding import DomainBinding
from ..steps import characterize
from ..types import Artefact, Solution
from .common import bin4

VOCAB = 64
TOPICS = 16
MIN_TOKENS = 8
MAX_TOKENS = 64
FULL_MUTATION_PROB = 0.2
CLASSIFY_THRESHOLD = 0.40
EDGE_THRESHOLD = 0.25
COMPLEXITY_BIN_THRESHOLDS = (0.05, 0.15, 0.30)
COLOURFULNESS_BIN_THRESHOLDS = (20.0, 40.0, 60.0)
COLOURFULNESS_SCALE = 300.0
PROJECTION_SEED = 0xC0FFEE

IMAGE_VECTOR_LAYOUT = (
    "quadrant_mean_luminance_tl",
    "quadrant_mean_luminance_tr",
    "quadrant_mean_luminance_bl",
    "quadrant_mean_luminance_br",
    "quadrant_edge_complexity_tl",
    "quadrant_edge_complexity_tr",
    "quadrant_edge_complexity_bl",
    "quadrant_edge_complexity_br",
    "mean_red",
    "mean_green",
    "mean_blue",
    "colourfulness_scaled_clamped",
    "global_edge_complexity",
    "luminance_std",
    "mean_abs_horizontal_luminance_diff",
    "luminance_range",
)

_MASK64 = (1 << 64) - 1


def splitmix64_stream(seed: int, count: int) -> list[int]:
    """The reference SplitMix64 sequence, in pure integer arithmetic."""
    state = seed & _MASK64
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out.append(z ^ (z >> 31))
    return out


def _projection_matrix() -> np.ndarray:
    words = splitmix64_stream(PROJECTION_SEED, 16 * 16)
    values = [2.0 * (w / 2.0**64) - 1.0 for w in words]
    return np.array(values, dtype=np.float64).reshape(16, 16)


PROJECTION = _projection_matrix()


def _topic_rows() -> np.ndarray:
    rows = np.full((TOPICS, VOCAB), 1.0 / 300.0)
    for k in range(TOPICS):
        rows[k, 4 * k : 4 * k + 4] = 0.2
    return rows


TOPIC_ROWS = _topic_rows()
_LOG_TOPIC_ROWS = np.log(TOPIC_ROWS)


def preferred_token_counts(tokens: np.ndarray) -> np.ndarray:
    counts = np.bincount(tokens, minlength=VOCAB)
    return counts.reshape(TOPICS, 4).sum(axis=1)


def topic_posterior(tokens: np.ndarray) -> np.ndarray:
    """Posterior over topics under a uniform prior; sums to 1."""
    counts = np.bincount(tokens, minlength=VOCAB).astype(np.float64)
    loglik = _LOG_TOPIC_ROWS @ counts
    shifted = np.exp(loglik - loglik.max())
    return shifted / shifted.sum()


def classify_text(tokens: np.ndarray) -> int | None:
    """Top topic, or None unless it is unique with posterior >= 0.40.

    The posterior ordering depends only on how many preferred tokens of
    each topic appear, so ties are detected on those integer counts and
    are exact.
    """
    pref = preferred_token_counts(tokens)
    top = int(np.argmax(pref))
    if int((pref == pref[top]).sum()) > 1:
        return None
    if topic_posterior(tokens)[top] >= CLASSIFY_THRESHOLD:
        return top
    return None


def luminance(pixels: np.ndarray) -> np.ndarray:
    return 0.299 * pixels[..., 0] + 0.587 * pixels[..., 1] + 0.114 * pixels[..., 2]


def edge_complexity(pixels: np.ndarray, threshold: float = EDGE_THRESHOLD) -> float:
    """Fraction of interior pixels whose gradient magnitude exceeds the
    threshold.

    Gradients come from the 3x3 Sobel pair divided by 4, so a unit step
    edge measures exactly 1. Border pixels are excluded from both the
    edge count and the denominator.
    """
    h, w = pixels.shape[:2]
    if h < 3 or w < 3:
        raise ValueError(f"edge complexity needs at least 3x3 pixels, got {h}x{w}")
    y = luminance(pixels)
    tl, tc, tr = y[:-2, :-2], y[:-2, 1:-1], y[:-2, 2:]
    ml, mr = y[1:-1, :-2], y[1:-1, 2:]
    bl, bc, br = y[2:, :-2], y[2:, 1:-1], y[2:, 2:]
    gx = (tr + 2.0 * mr + br - tl - 2.0 * ml - bl) / 4.0
    gy = (bl + 2.0 * bc + br - tl - 2.0 * tc - tr) / 4.0
    magnitude = np.hypot(gx, gy)
    return float(np.count_nonzero(magnitude > threshold)) / magnitude.size


def colourfulness(pixels: np.ndarray) -> float:
    """Hasler-Susstrunk colourfulness on 0..255-scaled channels, with
    population standard deviations."""
    r = pixels[..., 0] * 255.0
    g = pixels[..., 1] * 255.0
    b = pixels[..., 2] * 255.0
    rg = r - g
    yb = 0.5 * (r + g) - b
    sigma = math.hypot(float(np.std(rg)), float(np.std(yb)))
    mu = math.hypot(float(np.mean(rg)), float(np.mean(yb)))
    return sigma + 0.3 * mu


def describe_image(pixels: np.ndarray) -> int:
    comp = bin4(edge_complexity(pixels), COMPLEXITY_BIN_THRESHOLDS)
    colour = bin4(colourfulness(pixels), COLOURFULNESS_BIN_THRESHOLDS)
    return 4 * comp + colour


def _quadrants(pixels: np.ndarray) -> tuple[np.ndarray, ...]:
    h2, w2 = pixels.shape[0] // 2, pixels.shape[1] // 2
    return (
        pixels[:h2, :w2],
        pixels[:h2, w2:],
        pixels[h2:, :w2],
        pixels[h2:, w2:],
    )


def image_vector(pixels: np.ndarray) -> np.ndarray:
    """The 16 image statistics listed in IMAGE_VECTOR_LAYOUT, in order."""
    y = luminance(pixels)
    features = []
    quads = _quadrants(pixels)
    features.extend(float(np.mean(luminance(q))) for q in quads)
    for q in quads:
        ok = q.shape[0] >= 3 and q.shape[1] >= 3
        features.append(edge_complexity(q) if ok else 0.0)
    features.extend(float(np.mean(pixels[..., ch])) for ch in range(3))
    features.append(min(colourfulness(pixels) / COLOURFULNESS_SCALE, 1.0))
    features.append(edge_complexity(pixels))
    features.append(float(np.std(y)))
    if y.shape[1] >= 2:
        features.append(float(np.mean(np.abs(y[:, 1:] - y[:, :-1]))))
    else:
        features.append(0.0)
    features.append(float(np.max(y) - np.min(y)))
    return np.array(features, dtype=np.float64)


def media_coherence(tokens: np.ndarray, pixels: np.ndarray) -> float:
    """(1 + cos(M @ e_img, e_txt)) / 2, or the neutral 0.5 when either
    side has zero norm."""
    e_txt = topic_posterior(tokens)
    mapped = PROJECTION @ image_vector(pixels)
    tn = float(np.linalg.norm(e_txt))
    mn = float(np.linalg.norm(mapped))
    if tn == 0.0 or mn == 0.0:
        return 0.5
    cos = float(np.dot(mapped, e_txt)) / (tn * mn)
    return (1.0 + max(-1.0, min(1.0, cos))) / 2.0


def box_blur(pixels: np.ndarray) -> np.ndarray:
    """3x3 box blur with edge replication, per channel."""
    padded = np.pad(pixels, ((1, 1), (1, 1), (0, 0)), mode="edge")
    h, w = pixels.shape[:2]
    total = np.zeros_like(pixels)
    for di in range(3):
        for dj in range(3):
            total += padded[di : di + h, dj : dj + w]
    return total / 9.0


def constants_dict() -> dict:
    """Every constant an external implementation needs to reproduce the
    descriptors and coherence bit-exactly."""
    return {
        "vocabulary_size": VOCAB,
        "topic_count": TOPICS,
        "token_length_range": [MIN_TOKENS, MAX_TOKENS],
        "classification_threshold": CLASSIFY_THRESHOLD,
        "topic_rows": [[float(p) for p in row] for row in TOPIC_ROWS],
        "edge_threshold": EDGE_THRESHOLD,
        "complexity_bin_thresholds": list(COMPLEXITY_BIN_THRESHOLDS),
        "colourfulness_bin_thresholds": list(COLOURFULNESS_BIN_THRESHOLDS),
        "colourfulness_scale": COLOURFULNESS_SCALE,
        "projection_seed": PROJECTION_SEED,
        "projection": [[float(v) for v in row] for row in PROJECTION],
        "image_vector_layout": list(IMAGE_VECTOR_LAYOUT),
    }


class ToyMediaDomain(DomainBinding):
    name = "toy_media"

    def __init__(self, width: int = 32, height: int = 32, noise_sigma: float = 0.1):
        if width < 3 or height < 3:
            raise ValueError(f"images must be at least 3x3, got {width}x{height}")
        if noise_sigma < 0:
            raise ValueError(f"noise_sigma must be non-negative, got {noise_sigma}")
        self.width = int(width)
        self.height = int(height)
        self.noise_sigma = float(noise_sigma)

    @property
    def modality_count(self) -> int:
        return 2

    @property
    def axis_sizes(self) -> tuple[int, ...]:
        return (TOPICS, 16)

    def _sample_text(self, topic: int, length: int, rng: np.random.Generator) -> np.ndarray:
        return rng.choice(VOCAB, size=length, p=TOPIC_ROWS[topic]).astype(np.int64)

    def generate(self, rng: np.random.Generator) -> Solution | None:
        topic = int(rng.integers(TOPICS))
        length = int(rng.integers(MIN_TOKENS, MAX_TOKENS + 1))
        tokens = self._sample_text(topic, length, rng)
        pixels = rng.random((self.height, self.width, 3))
        return characterize(self, (Artefact(0, tokens), Artefact(1, pixels)))

    def _vary_text(self, parent_tokens: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        if rng.random() < FULL_MUTATION_PROB:
            topic = int(rng.integers(TOPICS))
            length = int(rng.integers(MIN_TOKENS, MAX_TOKENS + 1))
            return self._sample_text(topic, length, rng)
        n = len(parent_tokens)
        split = int(rng.integers(n // 3, 2 * n // 3 + 1))
        top = int(np.argmax(preferred_token_counts(parent_tokens)))
        suffix = self._sample_text(top, n - split, rng)
        return np.concatenate([parent_tokens[:split], suffix])

    def _vary_image(self, parent_pixels: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        noisy = parent_pixels + rng.normal(0.0, self.noise_sigma, parent_pixels.shape)
        return box_blur(np.clip(noisy, 0.0, 1.0))

    def vary(self, modality: int, parent: Solution, rng: np.random.Generator) -> Artefact | None:
        payload = parent.artefacts[modality].payload
        if modality == 0:
            return Artefact(0, self._vary_text(payload, rng))
        return Artefact(1, self._vary_image(payload, rng))

    def describe(self, modality: int, payload: np.ndarray) -> int | None:
        if modality == 0:
            return classify_text(payload)
        return describe_image(payload)

    def cohere(self, payloads: tuple[np.ndarray, ...]) -> float:
        return media_coherence(payloads[0], payloads[1])
