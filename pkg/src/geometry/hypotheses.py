"""Grid-resolution checks of the topological hypotheses on factor domains."""

from dataclasses import dataclass
import logging

import numpy as np
from scipy import ndimage

from geometry.paths import DisconnectedGridError, estimate_path_bound
from geometry.raster import Raster
import utils.convert
import utils.settings


logger = logging.getLogger(__name__)

EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)

# Probe points around a suspicious pixel: two rings of 16 directions, which
# include the four axis directions.
PROBE_DIRECTIONS = np.exp(2j * np.pi * np.arange(16) / 16)
PROBE_RADII = (0.25, 0.5)


class HypothesisError(ValueError):
    """Raised when a factor domain fails a hypothesis check."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class HypothesisReport:
    """Results of the grid checks for one factor domain, all valid only at the
    recorded resolution.

    Fields:
    - domain -- the checked PlanarDomain
    - resolution -- grid spacing h used by every check
    - path_bound -- estimated intrinsic path bound M, or None when the grid is
      disconnected
    - diameter -- Euclidean diameter of the closure (boundary samples)
    - grid_connected -- whether the inside pixels form one 8-connected piece
    - complement_connected -- whether the complement of the closure is
      connected
    - complement_components -- number of 4-connected complement components
    - interior_matches -- whether the interior of the closure adds no points
      to the domain
    - interior_violations -- number of pixels in the interior of the closure
      but not in the domain
    """

    domain: object
    resolution: float
    path_bound: object
    diameter: float
    grid_connected: bool
    complement_connected: bool
    complement_components: int
    interior_matches: bool
    interior_violations: int

    @property
    def passed(self):
        return self.grid_connected and self.complement_connected and self.interior_matches

    def failures(self):
        """Return a list of human-readable reasons the checks failed."""
        reasons = []
        if not self.grid_connected:
            reasons.append("grid of inside points is disconnected")
        if not self.complement_connected:
            reasons.append(f"complement of the closure has {self.complement_components} components")
        if not self.interior_matches:
            reasons.append(f"interior of the closure exceeds the domain at {self.interior_violations} pixel(s)")
        return reasons

    def to_dict(self):
        return {
            'domain': self.domain.to_config(),
            'resolution': self.resolution,
            'path_bound': self.path_bound,
            'diameter': self.diameter,
            'grid_connected': self.grid_connected,
            'complement_connected': self.complement_connected,
            'complement_components': self.complement_components,
            'interior_matches': self.interior_matches,
            'interior_violations': self.interior_violations,
            'passed': self.passed,
            'note': f"topological checks hold at resolution h={self.resolution!r} only",
        }


def complement_components(raster):
    """Count the 4-connected components of the complement of the closure,
    where the closure is the inside mask dilated by one pixel."""
    closure = ndimage.binary_dilation(raster.mask, structure=EIGHT_CONNECTED)
    _, count = ndimage.label(~closure)
    return count


def closure_interior_violations(raster):
    """Count pixels outside the domain that lie in the interior of its closure.

    A pixel is suspicious when morphological closing fills it. It counts as a
    violation only when every probe point around it lies in the domain, so
    gaps of positive area that are merely narrower than a pixel do not count.
    """
    closed = ndimage.binary_erosion(
        ndimage.binary_dilation(raster.mask, structure=EIGHT_CONNECTED),
        structure=EIGHT_CONNECTED,
    )
    suspicious = np.flatnonzero(closed & ~raster.mask)
    if not len(suspicious):
        return 0
    offsets = np.concatenate([r * raster.resolution * PROBE_DIRECTIONS for r in PROBE_RADII])
    surrounded = raster.supersample(suspicious, offsets).all(axis=1)
    return int(np.count_nonzero(surrounded))


def check_hypotheses(domain, resolution=None):
    """Check the grid-level hypotheses on one factor domain.

    Optional arguments:
    - resolution (default 0.01) -- grid spacing h

    Never raises for hypothesis failures; inspect `HypothesisReport.passed`.
    """
    resolution = utils.convert.to_positive(
        utils.settings.DEFAULT_RESOLUTION if resolution is None else resolution, 'resolution')
    raster = Raster(domain, resolution)
    try:
        path_bound = estimate_path_bound(domain, resolution)
        grid_connected = True
    except DisconnectedGridError as e:
        logger.warning("%s", e)
        path_bound = None
        grid_connected = False
    components = complement_components(raster)
    violations = closure_interior_violations(raster)
    report = HypothesisReport(
        domain=domain,
        resolution=resolution,
        path_bound=path_bound,
        diameter=domain.diameter(),
        grid_connected=grid_connected,
        complement_connected=components == 1,
        complement_components=components,
        interior_matches=violations == 0,
        interior_violations=violations,
    )
    logger.debug("hypotheses for %s: %s", domain, report.failures() or "passed")
    return report
