"""Joint configuration files: unit-suffixed key-value text.

Format: one `key = value` pair per line, `#` starts a comment. Required
joint keys (units in the suffix): r_mm, d_mm, K_N_per_m, I_kg_m2,
zetaI_N_m_s. Optional: Q0I_N_m (forcing amplitude times inertia) and the
wake calibration pair wake_c_omega / wake_c_amp.

Table rows given as zeta*I and Q0*I are divided by I at ingestion; the
loader echoes every derived SI value so the division is auditable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .joint import JointParams, derive_geometry
from .wake import WakeCalibration

__all__ = ["ConfigError", "JointConfig", "parse_config", "load_config",
           "DEFAULT_CONFIG_TEXT"]

_REQUIRED = ("r_mm", "d_mm", "K_N_per_m", "I_kg_m2", "zetaI_N_m_s")
_OPTIONAL = ("Q0I_N_m", "wake_c_omega", "wake_c_amp")

DEFAULT_CONFIG_TEXT = """\
# Reference joint of the swimming-robot prototype
r_mm = 20.24
d_mm = 27.68
K_N_per_m = 81
I_kg_m2 = 3.1e-5
zetaI_N_m_s = 2.2e-4
Q0I_N_m = 1e-4
"""


class ConfigError(ValueError):
    """Malformed or incomplete configuration; the message names the key."""


@dataclass(frozen=True)
class JointConfig:
    """Parsed configuration: joint in SI plus optional forcing/wake data."""

    joint: JointParams
    Q0: float | None = None
    wake_calibration: WakeCalibration | None = None

    def echo_si(self) -> dict[str, float]:
        """Derived SI values for audit output (includes the /I divisions)."""
        geom = derive_geometry(self.joint)
        out = {
            "r_m": self.joint.r,
            "d_m": self.joint.d,
            "K_N_per_m": self.joint.K,
            "I_kg_m2": self.joint.I,
            "zeta_1_per_s": self.joint.zeta,
            "epsilon_m": geom.epsilon,
            "S_m2": geom.S,
        }
        if self.Q0 is not None:
            out["Q0_rad_per_s2"] = self.Q0
        if self.wake_calibration is not None:
            out["wake_c_omega"] = self.wake_calibration.c_omega
            out["wake_c_amp"] = self.wake_calibration.c_amp
        return out


def parse_config(text: str) -> JointConfig:
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _REQUIRED and key not in _OPTIONAL:
            raise ConfigError(f"unknown config key {key!r} (line {lineno})")
        if key in values:
            raise ConfigError(f"duplicate config key {key!r} (line {lineno})")
        try:
            values[key] = float(val.strip())
        except ValueError:
            raise ConfigError(f"key {key!r}: cannot parse {val.strip()!r} "
                              f"as a number") from None
    for key in _REQUIRED:
        if key not in values:
            raise ConfigError(f"missing required config key {key!r}")

    I = values["I_kg_m2"]
    if not I > 0:
        raise ConfigError("key 'I_kg_m2': must be positive")
    try:
        joint = JointParams(
            r=values["r_mm"] * 1e-3,
            d=values["d_mm"] * 1e-3,
            K=values["K_N_per_m"],
            I=I,
            zeta=values["zetaI_N_m_s"] / I,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    q0 = values.get("Q0I_N_m")
    calib = None
    has_omega, has_amp = "wake_c_omega" in values, "wake_c_amp" in values
    if has_omega != has_amp:
        missing = "wake_c_amp" if has_omega else "wake_c_omega"
        raise ConfigError(f"missing wake calibration key {missing!r}")
    if has_omega:
        try:
            calib = WakeCalibration(c_omega=values["wake_c_omega"],
                                    c_amp=values["wake_c_amp"])
        except ValueError as exc:
            raise ConfigError(f"wake calibration: {exc}") from None
    return JointConfig(joint=joint, Q0=None if q0 is None else q0 / I,
                       wake_calibration=calib)


def load_config(path) -> JointConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
