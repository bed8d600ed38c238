"""Per-block operation tallies used by the energy model."""

from dataclasses import asdict, dataclass, fields

from utils.exceptions import ValidationError


@dataclass(frozen=True)
class OpCounts:
    """Operation counts for one run (or one step) of a sampler.

    Categories follow the converter blocks: the comparator (window and SAR
    bit decisions), the DAC and the digital control logic.
    """

    window_comparisons: int = 0
    sar_bit_comparisons: int = 0
    dac_settings: int = 0
    digital_cycles: int = 0
    sar_conversions: int = 0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValidationError(f"{f.name} must be non-negative")

    def __add__(self, other: "OpCounts") -> "OpCounts":
        if not isinstance(other, OpCounts):
            return NotImplemented
        return OpCounts(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    @property
    def comparator_ops(self) -> int:
        """All comparator activations: window tests plus SAR bit trials."""
        return self.window_comparisons + self.sar_bit_comparisons

    def is_consistent(self, bits: int) -> bool:
        return self.sar_bit_comparisons == bits * self.sar_conversions

    def to_dict(self) -> dict:
        data = asdict(self)
        data["comparator_ops"] = self.comparator_ops
        return data


def sum_op_counts(items) -> OpCounts:
    names = [f.name for f in fields(OpCounts)]
    totals = dict.fromkeys(names, 0)
    for item in items:
        for name in names:
            totals[name] += getattr(item, name)
    return OpCounts(**totals)
