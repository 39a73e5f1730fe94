"""Named parameter sets for the eight reference collapse-and-revival traces."""
from __future__ import annotations

from dataclasses import dataclass

from revival_lab.fock import StateParams
from revival_lab.jcm import JcmParams

FAMILIES = ("coherent", "n_coherent", "squeezed", "n_squeezed")

# low photon numbers: t in [0, 60], 6000 points; ~100 photons: t in [0, 120], 24000 points
LOW_GRID = (60.0, 6000)
HIGH_GRID = (120.0, 24000)


@dataclass(frozen=True)
class FigurePreset:
    name: str
    state_family: str
    params: StateParams
    t_max: float
    points: int
    nominal_mean: int
    lambda_coupling: float = 1.0
    detuning: float = 0.0

    @property
    def jcm(self) -> JcmParams:
        return JcmParams.uniform(self.t_max, self.points, self.lambda_coupling, self.detuning)


def _preset(name, family, alpha, r, n, grid, mean):
    return FigurePreset(name, family, StateParams(alpha_mod=alpha, r=r, n_extra=n), grid[0], grid[1], mean)


PRESETS: dict[str, FigurePreset] = {
    p.name: p
    for p in (
        _preset("fig1", "coherent", 2.0, 0.0, 0, LOW_GRID, 4),
        _preset("fig2", "n_coherent", 2.0, 0.0, 3, LOW_GRID, 7),
        _preset("fig3", "coherent", 10.0, 0.0, 0, HIGH_GRID, 100),
        _preset("fig4", "n_coherent", 10.0, 0.0, 3, HIGH_GRID, 103),
        _preset("fig5", "squeezed", 2.56230, 0.424875, 0, LOW_GRID, 3),
        _preset("fig6", "n_squeezed", 2.18536, 0.424875, 2, LOW_GRID, 5),
        _preset("fig7", "squeezed", 24.4485, 0.8992, 0, HIGH_GRID, 100),
        _preset("fig8", "n_squeezed", 23.92344, 0.8992, 2, HIGH_GRID, 102),
    )
}

# zero-photon partner of each n-photon preset, compared on identical grids
PARTNERS = {"fig2": "fig1", "fig4": "fig3", "fig6": "fig5", "fig8": "fig7"}


def get_preset(name: str) -> FigurePreset:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
