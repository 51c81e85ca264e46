"""Label-preserving augmentation of N-channel images.

Six techniques: horizontal/vertical flips, rotation, translation, zoom and
shear (fused into a single affine warp with bilinear resampling and
edge-replication padding), and multiplicative speckle noise. Every channel
of a pixel is resampled on the identical grid, so band alignment survives
any warp.

Randomness is explicit: operations that draw values take a seed and build a
``numpy.random.Generator`` backed by PCG64 from it. Gaussian variates come
from numpy's ziggurat sampler on that stream. Parameter sampling consumes a
fixed number of uniform draws in a fixed, documented order, so a (config,
seed) pair pins the exact output bytes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .image import HyperImage, LabeledSample


@dataclass(frozen=True)
class AugmentConfig:
    """User-facing augmentation ranges.

    ``max_rotation`` is in degrees, ``max_translation`` a fraction of the
    image size per axis, ``max_zoom`` a scale factor >= 1 (draws cover
    [1/max_zoom, max_zoom]), ``max_shear`` a dimensionless factor, and
    ``speckle_variance`` the variance of the multiplicative Gaussian noise.
    The default-constructed config is the identity.
    """

    flip_horizontal: bool = False
    flip_vertical: bool = False
    max_rotation: float = 0.0
    max_translation: float = 0.0
    max_zoom: float = 1.0
    max_shear: float = 0.0
    speckle_variance: float = 0.0

    def __post_init__(self):
        if self.max_rotation < 0:
            raise InvalidArgumentError(f"max_rotation must be >= 0, got {self.max_rotation}")
        if self.max_translation < 0:
            raise InvalidArgumentError(
                f"max_translation must be >= 0, got {self.max_translation}")
        if self.max_zoom < 1:
            raise InvalidArgumentError(f"max_zoom must be >= 1, got {self.max_zoom}")
        if self.max_shear < 0:
            raise InvalidArgumentError(f"max_shear must be >= 0, got {self.max_shear}")
        if self.speckle_variance < 0:
            raise InvalidArgumentError(
                f"speckle_variance must be >= 0, got {self.speckle_variance}")

    @property
    def is_identity(self) -> bool:
        return not (self.flip_horizontal or self.flip_vertical
                    or self.max_rotation > 0 or self.max_translation > 0
                    or self.max_zoom > 1 or self.max_shear > 0
                    or self.speckle_variance > 0)


@dataclass(frozen=True)
class AugmentParams:
    """One concrete parameter draw; fully determined by (config, seed).

    ``angle`` is in degrees, ``dx``/``dy`` in pixels, ``zoom`` a scale
    factor, ``shear`` the off-diagonal coefficient applied to the
    x-coordinate (x' = x + shear * y).
    """

    do_flip_h: bool = False
    do_flip_v: bool = False
    angle: float = 0.0
    dx: float = 0.0
    dy: float = 0.0
    zoom: float = 1.0
    shear: float = 0.0
    speckle_variance: float = 0.0

    @property
    def warp_is_identity(self) -> bool:
        return (self.angle == 0.0 and self.dx == 0.0 and self.dy == 0.0
                and self.zoom == 1.0 and self.shear == 0.0)


@dataclass(frozen=True)
class AffineMatrix:
    """Output-to-input coordinate map:

        x_in = a * x_out + b * y_out + tx
        y_in = c * x_out + d * y_out + ty
    """

    a: float
    b: float
    tx: float
    c: float
    d: float
    ty: float

    @classmethod
    def identity(cls) -> "AffineMatrix":
        return cls(1.0, 0.0, 0.0, 0.0, 1.0, 0.0)

    @property
    def determinant(self) -> float:
        return self.a * self.d - self.b * self.c

    def apply(self, x: float, y: float) -> tuple[float, float]:
        return (self.a * x + self.b * y + self.tx,
                self.c * x + self.d * y + self.ty)


def flip_h(img: HyperImage) -> HyperImage:
    """Mirror over the vertical axis: out(r, c, k) == in(r, W-1-c, k)."""
    return HyperImage(np.ascontiguousarray(img.data[:, ::-1, :]))


def flip_v(img: HyperImage) -> HyperImage:
    """Mirror over the horizontal axis: out(r, c, k) == in(H-1-r, c, k)."""
    return HyperImage(np.ascontiguousarray(img.data[::-1, :, :]))


def _translation(tx: float, ty: float) -> np.ndarray:
    return np.array([[1.0, 0.0, tx],
                     [0.0, 1.0, ty],
                     [0.0, 0.0, 1.0]])


def _rotation_deg(angle: float) -> np.ndarray:
    rad = math.radians(angle)
    cos, sin = math.cos(rad), math.sin(rad)
    return np.array([[cos, -sin, 0.0],
                     [sin, cos, 0.0],
                     [0.0, 0.0, 1.0]])


def _shear_x(s: float) -> np.ndarray:
    return np.array([[1.0, s, 0.0],
                     [0.0, 1.0, 0.0],
                     [0.0, 0.0, 1.0]])


def _scale(k: float) -> np.ndarray:
    return np.array([[k, 0.0, 0.0],
                     [0.0, k, 0.0],
                     [0.0, 0.0, 1.0]])


def make_affine(params: AugmentParams, width: int, height: int) -> AffineMatrix:
    """Fuse rotation, shear, zoom, and translation into one output-to-input map.

    Applied to an output coordinate, the map is, in order: shift the image
    center to the origin, inverse zoom, inverse shear, inverse rotation,
    shift the origin back to the center, then subtract (dx, dy). Rotation,
    shear, and zoom therefore act about the image center ((W-1)/2, (H-1)/2),
    and identity parameters produce the exact identity matrix.
    """
    if params.zoom <= 0:
        raise InvalidArgumentError(f"zoom must be > 0, got {params.zoom}")
    cx = (width - 1) / 2.0
    cy = (height - 1) / 2.0
    m = (_translation(-params.dx, -params.dy)
         @ _translation(cx, cy)
         @ _rotation_deg(-params.angle)
         @ _shear_x(-params.shear)
         @ _scale(1.0 / params.zoom)
         @ _translation(-cx, -cy))
    return AffineMatrix(a=m[0, 0], b=m[0, 1], tx=m[0, 2],
                        c=m[1, 0], d=m[1, 1], ty=m[1, 2])


def warp_affine(img: HyperImage, m: AffineMatrix) -> HyperImage:
    """Resample the image through an output-to-input affine map.

    Each output pixel samples the input at the mapped real coordinate by
    bilinear interpolation; mapped coordinates outside [0, W-1] x [0, H-1]
    are clamped first, which replicates edge pixels into out-of-frame
    regions and preserves the image size. All channels share one sampling
    grid. Interpolation runs in float64 and is written in monotone lerp
    form, so every output sample stays within [min(input), max(input)].
    """
    h, w, _ = img.shape
    xs = np.arange(w, dtype=np.float64)
    ys = np.arange(h, dtype=np.float64)
    x_in = m.a * xs[None, :] + m.b * ys[:, None] + m.tx
    y_in = m.c * xs[None, :] + m.d * ys[:, None] + m.ty
    np.clip(x_in, 0.0, w - 1.0, out=x_in)
    np.clip(y_in, 0.0, h - 1.0, out=y_in)

    x0 = np.floor(x_in).astype(np.intp)
    y0 = np.floor(y_in).astype(np.intp)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (x_in - x0)[:, :, None]
    fy = (y_in - y0)[:, :, None]

    data = img.data
    v00 = data[y0, x0].astype(np.float64)
    v01 = data[y0, x1].astype(np.float64)
    v10 = data[y1, x0].astype(np.float64)
    v11 = data[y1, x1].astype(np.float64)

    top = v00 + fx * (v01 - v00)
    bottom = v10 + fx * (v11 - v10)
    out = top + fy * (bottom - top)
    return HyperImage(out.astype(np.float32))


def _speckle_from(img: HyperImage, variance: float, rng: np.random.Generator) -> HyperImage:
    noise = rng.normal(0.0, math.sqrt(variance), size=img.shape)
    return HyperImage((img.data * (1.0 + noise)).astype(np.float32))


def speckle(img: HyperImage, variance: float, seed: int) -> HyperImage:
    """Multiplicative Gaussian noise: out = in * (1 + n), n ~ N(0, variance).

    Deterministic for a given seed; variance 0 returns the input unchanged.
    Zeros in the input stay exactly zero for any variance.
    """
    if variance < 0:
        raise InvalidArgumentError(f"variance must be >= 0, got {variance}")
    if variance == 0:
        return img
    return _speckle_from(img, variance, np.random.Generator(np.random.PCG64(seed)))


def _sample_params_from(config: AugmentConfig, width: int, height: int,
                        rng: np.random.Generator) -> AugmentParams:
    # Fixed consumption: seven uniforms in one draw, mapped affinely into the
    # configured ranges, so the stream layout never depends on the config.
    u = rng.random(7)
    max_dx = config.max_translation * width
    max_dy = config.max_translation * height
    zoom_lo = 1.0 / config.max_zoom
    return AugmentParams(
        do_flip_h=bool(config.flip_horizontal and u[0] < 0.5),
        do_flip_v=bool(config.flip_vertical and u[1] < 0.5),
        angle=(2.0 * u[2] - 1.0) * config.max_rotation,
        dx=(2.0 * u[3] - 1.0) * max_dx,
        dy=(2.0 * u[4] - 1.0) * max_dy,
        zoom=zoom_lo + u[5] * (config.max_zoom - zoom_lo),
        shear=(2.0 * u[6] - 1.0) * config.max_shear,
        speckle_variance=config.speckle_variance,
    )


def sample_params(config: AugmentConfig, width: int, height: int, seed: int) -> AugmentParams:
    """Draw one concrete parameter set from the configured ranges.

    Flips fire with probability 0.5 per enabled axis; angle, shear, and the
    per-axis pixel shifts (dx over width, dy over height) are uniform and
    symmetric about zero; zoom is uniform in [1/max_zoom, max_zoom]. The
    identity config yields identity parameters for every seed.
    """
    return _sample_params_from(config, width, height,
                               np.random.Generator(np.random.PCG64(seed)))


def augment_image(img: HyperImage, config: AugmentConfig, seed: int) -> HyperImage:
    """Apply one seeded augmentation draw: flips, fused warp, then speckle.

    The geometric part is a single composed warp with one resampling pass.
    One PCG64 stream drives the whole call: seven uniforms for the
    parameter draw, then the speckle field. The identity config returns the
    input image bit-exactly.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    params = _sample_params_from(config, img.width, img.height, rng)
    out = img
    if params.do_flip_h:
        out = flip_h(out)
    if params.do_flip_v:
        out = flip_v(out)
    if not params.warp_is_identity:
        out = warp_affine(out, make_affine(params, out.width, out.height))
    if params.speckle_variance > 0:
        out = _speckle_from(out, params.speckle_variance, rng)
    return out


def augment(sample: LabeledSample, config: AugmentConfig, seed: int) -> LabeledSample:
    """Augment a labeled sample; the label index always passes through."""
    return LabeledSample(augment_image(sample.image, config, seed), sample.label_index)
