"""Line-oriented ``key = value`` scenario configuration files.

Parsing is total: every accepted file maps onto a valid ScenarioConfig, and
every rejection names the offending line.  Unknown keys are errors, not
warnings, so config drift fails loudly.
"""

from __future__ import annotations

from routesim.harness import ScenarioConfig, ScenarioError
from routesim.topology import VoidSpec


class ConfigError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"config line {lineno}: {message}")
        self.lineno = lineno


_INT_KEYS = {"rows", "cols", "n", "dims", "align_depth", "seed"}
_FLOAT_KEYS = {"spacing", "width", "height", "radio_range", "semi_weight", "loc_error", "ttl_factor"}
_STR_KEYS = {"deployment", "align_rule", "distance", "protocol"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS | {"voids", "anchors"}


def parse_voids(text: str, lineno: int = 0) -> tuple[VoidSpec, ...]:
    """Void list syntax: ``disc:cx,cy,r`` or ``rect:cx,cy,hw,hh``, joined by ';'."""
    text = text.strip()
    if not text or text == "none":
        return ()
    out = []
    for part in text.split(";"):
        part = part.strip()
        kind, _, params = part.partition(":")
        try:
            nums = [float(x) for x in params.split(",")]
        except ValueError:
            raise ConfigError(lineno, f"bad void parameters {params!r}")
        if kind == "disc" and len(nums) == 3:
            out.append(VoidSpec("disc", (nums[0], nums[1]), radius=nums[2]))
        elif kind == "rect" and len(nums) == 4:
            out.append(VoidSpec("rect", (nums[0], nums[1]), half_w=nums[2], half_h=nums[3]))
        else:
            raise ConfigError(lineno, f"bad void spec {part!r} (want disc:cx,cy,r or rect:cx,cy,hw,hh)")
    return tuple(out)


def parse_config(text: str) -> ScenarioConfig:
    """Parse config text into a validated ScenarioConfig."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = (p.strip() for p in line.partition("="))
        if not eq:
            raise ConfigError(lineno, f"expected 'key = value', got {raw!r}")
        if key not in _ALL_KEYS:
            raise ConfigError(lineno, f"unknown key {key!r}")
        if key in values:
            raise ConfigError(lineno, f"duplicate key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key == "voids":
                values[key] = parse_voids(value, lineno)
            elif key == "anchors":
                if value == "corners":
                    values[key] = "corners"
                else:
                    values[key] = tuple(int(x) for x in value.split(","))
            else:
                values[key] = value
        except ConfigError:
            raise
        except ValueError:
            raise ConfigError(lineno, f"bad value {value!r} for {key!r}")
    try:
        return ScenarioConfig(**values)
    except ScenarioError as e:
        raise ConfigError(0, str(e))


def load_config(path: str) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
