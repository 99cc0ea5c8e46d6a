from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Union

import tenacity
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, JsonValue

from synthcomp.errors import DivergenceAtFuel


class Config(BaseModel):
    """Default bounds and output settings shared by the library and the CLI.

    Attributes:
        default_fuel: step budget for single program evaluations.
        default_budget: depth or index bound for searches (paths, witnesses, choices).
        leaf_budget: highest boolean-list code a leaf scan may examine.
        output: "text" for human readable output, "json" for one object per line.
        seed: seed for every randomized trial (perturbations, samples).

    """

    model_config = ConfigDict(frozen=True)

    default_fuel: int = Field(default=10_000, gt=0)
    default_budget: int = Field(default=64, gt=0)
    leaf_budget: int = Field(default=1 << 20, gt=0)
    output: Literal["text", "json"] = "text"
    seed: int = Field(default=0, ge=0)


class FuelEscalation(BaseModel):
    """Re-run a silent evaluation with geometrically growing fuel.

    Attributes:
        attempts: number of attempts.
            `attempts=1` means a single evaluation at `initial_fuel`.
        initial_fuel: fuel of the first attempt.
        factor: fuel multiplier between attempts.

    """

    attempts: int = Field(default=4, gt=0)
    initial_fuel: int = Field(default=1_000, gt=0)
    factor: int = Field(default=10, gt=1)

    def fuel_for(self, attempt_number: int) -> int:
        """Fuel used by the given (1-based) attempt."""
        return self.initial_fuel * self.factor ** (attempt_number - 1)

    @property
    def retrying_config(self) -> Dict[str, Any]:
        """Configuration for the escalation loop.

        Returns:
            kwargs dictionary for tenacity.Retrying.

        """
        return dict(
            stop=tenacity.stop_after_attempt(self.attempts),
            retry=tenacity.retry_if_exception_type(DivergenceAtFuel),
            wait=tenacity.wait_none(),
            reraise=True,
            before_sleep=tenacity.before_sleep_log(
                logger=logger, log_level="DEBUG"  # type: ignore[arg-type]
            ),
        )


class Report(BaseModel):
    """Outcome of an exhaustive or sampled check.

    Attributes:
        name: what was checked.
        checked: number of cases examined.
        violations: human readable description of every failing case.

    """

    name: str
    checked: int = 0
    violations: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when no case failed."""
        return not self.violations


class Evidence(BaseModel):
    """A finite certificate extracted from a diagonal argument.

    Attributes:
        code: the code the argument is about.
        witness: the index at which the decisive output was observed.
        conclusion: what the observation establishes.

    """

    code: int
    witness: int
    conclusion: str


class Domain(BaseModel):
    """An enumerable type with decidable equality.

    Attributes:
        enum_points: surjective enumeration, `None` marks a skipped index.
        index: position of a point in `enum_points`.
        eq: decidable equality.

    """

    enum_points: Callable[[int], Optional[Any]]
    index: Callable[[Any], int]
    eq: Callable[[Any, Any], bool]


class Point(BaseModel):
    """A point of Baire space (naturals) or Cantor space (booleans).

    Attributes:
        rule: total and deterministic function giving the value at each index.
        source: description of where the point comes from (code, table, rule).

    """

    model_config = ConfigDict(frozen=True)

    rule: Callable[[int], Any]
    source: str = "rule"

    def at(self, n: int) -> Any:
        """Value of the point at index `n`."""
        return self.rule(n)

    def prefix(self, length: int) -> List[Any]:
        """The first `length` values of the point."""
        return [self.rule(n) for n in range(length)]

    @classmethod
    def from_table(
        cls, values: Sequence[Any], default: Optional[Any] = None
    ) -> "Point":
        """Point given by a finite table.

        Args:
            values: the first values of the point, must be nonempty.
            default: value after the table. Without it the table repeats forever.

        Returns:
            new point.

        """
        table = list(values)
        if not table:
            raise ValueError("A point table needs at least one value.")
        if default is None:
            return cls(
                rule=lambda n: table[n % len(table)],
                source=f"table:{','.join(str(v) for v in table)}",
            )
        return cls(
            rule=lambda n: table[n] if n < len(table) else default,
            source=f"table:{','.join(str(v) for v in table)}+{default}",
        )


class SuiteResult(BaseModel):
    """Outcome of one acceptance suite.

    Attributes:
        suite: suite name.
        report: violations found by the suite.
        seconds: wall time spent.

    """

    suite: str
    report: Report
    seconds: float


class CommandOutput(BaseModel):
    """One line of `--json` CLI output.

    Attributes:
        cmd: command name.
        args: arguments as given.
        result: command result, absent on error.
        error: error message, absent on success.

    """

    cmd: str
    args: Dict[str, JsonValue] = Field(default_factory=dict)
    result: Optional[Union[JsonValue, List[JsonValue]]] = None
    error: Optional[str] = None
