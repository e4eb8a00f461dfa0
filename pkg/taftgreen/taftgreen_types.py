from dataclasses import dataclass
from collections import Counter
from colorama import Fore
from typing import List, Union
import os, re, sys, json, time, hashlib, pathlib


class LabelKind:
    """
    Enum-like class naming the four families of indecomposable modules.

    - Simple: V(l, r), 1 <= l <= n.
    - Proj: P(l, r), 1 <= l <= n-1 (P(n, r) is the simple V(n, r)).
    - Syz: Omega^{+-m} V(l, r), m >= 1.
    - Band: M_s(l, r, eta).
    """

    Simple = "simple"
    Proj = "proj"
    Syz = "syz"
    Band = "band"


class Sign:
    """
    Enum-like class for the direction of a syzygy: Plus is Omega, Minus is Omega^{-1}.
    """

    Plus = "+"
    Minus = "-"


class CheckStatus:
    """
    Enum-like class representing the outcome of a verification check.

    - Pass: both sides agree.
    - Fail: both sides were computed and differ.
    - Inconclusive: the oracle could not settle the question (never a disproof).
    """

    Pass = "pass"
    Fail = "fail"
    Inconclusive = "inconclusive"


class OutputFormat:
    Json = "json"
    Pretty = "pretty"


class SuiteName:
    Identities = "identities"
    Relations = "relations"
    Crosscheck = "crosscheck"
    Basis = "basis"
    Omega = "omega"
    All = "all"

    choices = ["identities", "relations", "crosscheck", "basis", "omega", "all"]


SCHEMA_VERSION = 1

_LABEL = re.compile(
    r"(?:Omega\^(?P<omega>-?\d+)\s*)?(?P<family>V|P)\(\s*(?P<l>\d+)\s*,\s*(?P<r>-?\d+)\s*\)"
    r"|M_(?P<s>\d+)\(\s*(?P<bl>\d+)\s*,\s*(?P<br>-?\d+)\s*;\s*eta\s*=\s*(?P<eta>.+?)\s*\)"
)


class TaftGreenError(Exception):
    """
    Base class of every domain error. `exit_code` is what the command line returns
    when the error escapes a command.
    """

    exit_code = 1

    def __init__(self, message: str):
        self.detail = message
        super().__init__(f"[Error] {message}")


class DivisionByZero(TaftGreenError, ZeroDivisionError):
    pass


class ShapeMismatch(TaftGreenError, ValueError):
    exit_code = 4


class RangeError(TaftGreenError, ValueError):
    exit_code = 4


class ParseError(TaftGreenError, ValueError):
    exit_code = 4


class LargeOrderRefused(TaftGreenError, ValueError):
    exit_code = 4


class ConstructionFailed(TaftGreenError, RuntimeError):
    pass


class Inconclusive(TaftGreenError, RuntimeError):
    exit_code = 6


class Unidentified(TaftGreenError, LookupError):
    exit_code = 6


class NonSplitSemisimpleQuotient(TaftGreenError, ArithmeticError):
    exit_code = 6


class CoverLiftFailed(TaftGreenError, RuntimeError):
    pass


class EnvelopeEmbedFailed(TaftGreenError, RuntimeError):
    pass


class MissingTableEntry(TaftGreenError, KeyError):
    exit_code = 5

    def __str__(self):
        return self.args[0]


class CacheCorrupted(TaftGreenError, RuntimeError):
    exit_code = 3


@dataclass
class IndecLabel:
    """
    Symbolic name of an indecomposable H_n(1,q)-module.

    Labels are built through the classmethod constructors, which check the parameter ranges
    and reduce `r` modulo `n`. `P(n, r)` and `Omega^0 V(l, r)` are not labels of their own:
    use `IndecLabel.projective` to get `Simple(n, r)` back when `l == n`.

    Attributes:
        kind (LabelKind): Which family the module belongs to.
        n (int): Order of q.
        l (int): Length parameter.
        r (int): Weight shift, always in range(n).
        m (int): Syzygy degree (Syz only).
        sign (Sign): Syzygy direction (Syz only).
        s (int): Band tower height (Band only).
        eta (EtaParam): Band parameter (Band only).
    """

    def __init__(
        self,
        kind: str,
        n: int,
        l: int,
        r: int,
        m: int = 0,
        sign: str = None,
        s: int = 0,
        eta=None,
    ):
        self.kind = kind
        self.n = n
        self.l = l
        self.r = r % n
        self.m = m
        self.sign = sign
        self.s = s
        self.eta = eta

    @classmethod
    def simple(cls, n: int, l: int, r: int) -> "IndecLabel":
        if not 1 <= l <= n:
            raise RangeError(f"V({l},{r}) needs 1 <= l <= {n}")
        return cls(LabelKind.Simple, n, l, r)

    @classmethod
    def proj(cls, n: int, l: int, r: int) -> "IndecLabel":
        if not 1 <= l <= n - 1:
            raise RangeError(
                f"P({l},{r}) needs 1 <= l <= {n - 1}; P({n},r) is the simple V({n},r)"
            )
        return cls(LabelKind.Proj, n, l, r)

    @classmethod
    def projective(cls, n: int, l: int, r: int) -> "IndecLabel":
        """Label of P(l, r), folding P(n, r) onto V(n, r)."""
        if l == n:
            return cls.simple(n, n, r)
        return cls.proj(n, l, r)

    @classmethod
    def syz(cls, n: int, sign: str, m: int, l: int, r: int) -> "IndecLabel":
        if sign not in (Sign.Plus, Sign.Minus):
            raise RangeError(f"Unknown syzygy sign {sign!r}")
        if m < 1:
            raise RangeError("Syzygy degree must be >= 1; degree 0 is the simple V(l,r)")
        if not 1 <= l <= n - 1:
            raise RangeError(f"Omega^m V({l},{r}) needs 1 <= l <= {n - 1}")
        return cls(LabelKind.Syz, n, l, r, m=m, sign=sign)

    @classmethod
    def syzygy(cls, n: int, sign: str, m: int, l: int, r: int) -> "IndecLabel":
        """Label of Omega^{+-m} V(l, r), folding m == 0 onto V(l, r)."""
        if m == 0:
            return cls.simple(n, l, r)
        return cls.syz(n, sign, m, l, r)

    @classmethod
    def band(cls, n: int, s: int, l: int, r: int, eta) -> "IndecLabel":
        if s < 1:
            raise RangeError("Band height s must be >= 1")
        if not 1 <= l <= n - 1:
            raise RangeError(f"M_s({l},{r}) needs 1 <= l <= {n - 1}")
        if eta is None:
            raise RangeError("Band labels need an eta parameter")
        return cls(LabelKind.Band, n, l, r, s=s, eta=eta)

    @property
    def is_projective(self) -> bool:
        return self.kind == LabelKind.Proj or (
            self.kind == LabelKind.Simple and self.l == self.n
        )

    @property
    def dim(self) -> int:
        if self.kind == LabelKind.Simple:
            return self.l
        if self.kind == LabelKind.Proj:
            return 2 * self.n
        if self.kind == LabelKind.Syz:
            if self.m % 2 == 0:
                return self.m * self.n + self.l
            return (self.m + 1) * self.n - self.l
        return self.s * self.n

    def key(self) -> tuple:
        eta_key = self.eta.sort_key() if self.eta is not None else ()
        return (self.kind, self.n, self.l, self.r, self.m, self.sign or "", self.s, eta_key)

    def sort_key(self) -> tuple:
        order = {LabelKind.Simple: 0, LabelKind.Proj: 1, LabelKind.Syz: 2, LabelKind.Band: 3}
        return (order[self.kind],) + self.key()[2:]

    def __eq__(self, other):
        if not isinstance(other, IndecLabel):
            return False
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.kind == LabelKind.Simple:
            return f"V({self.l},{self.r})"
        if self.kind == LabelKind.Proj:
            return f"P({self.l},{self.r})"
        if self.kind == LabelKind.Syz:
            exponent = self.m if self.sign == Sign.Plus else -self.m
            return f"Omega^{exponent} V({self.l},{self.r})"
        return f"M_{self.s}({self.l},{self.r};eta={self.eta.shorthand()})"

    def __repr__(self):
        return f"[{Fore.CYAN}{self.kind}{Fore.RESET}] {Fore.GREEN}{self}{Fore.RESET}"

    def to_json(self) -> dict:
        data = {"kind": self.kind, "l": self.l, "r": self.r}
        if self.kind == LabelKind.Syz:
            data["m"] = self.m
            data["sign"] = self.sign
        if self.kind == LabelKind.Band:
            data["s"] = self.s
            data["eta"] = self.eta.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict, n: int) -> "IndecLabel":
        from .cyclo import EtaParam, cyclotomic_field

        try:
            kind = data["kind"]
            if kind == LabelKind.Simple:
                return cls.simple(n, data["l"], data["r"])
            if kind == LabelKind.Proj:
                return cls.proj(n, data["l"], data["r"])
            if kind == LabelKind.Syz:
                return cls.syz(n, data["sign"], data["m"], data["l"], data["r"])
            if kind == LabelKind.Band:
                eta = EtaParam.from_json(data["eta"], cyclotomic_field(n))
                return cls.band(n, data["s"], data["l"], data["r"], eta)
        except (KeyError, TypeError) as err:
            raise ParseError(f"Malformed label JSON {data!r}: {err}")
        raise ParseError(f"Unknown label kind {data.get('kind')!r}")

    @classmethod
    def parse(cls, text: str, n: int) -> "IndecLabel":
        """
        Parse label shorthand, the inverse of `str`:

            V(l,r) | P(l,r) | Omega^m V(l,r) | Omega^-m V(l,r) | M_s(l,r;eta=<rational|json|inf>)

        Raises:
            ParseError: The text is not label shorthand.
            RangeError: The parameters are out of range.
        """
        from .cyclo import EtaParam, cyclotomic_field

        match = _LABEL.fullmatch(text.strip())
        if match is None:
            raise ParseError(f"Not a module label: {text!r}")
        family, exponent = match.group("family"), match.group("omega")
        if family is None:
            eta = EtaParam.parse(match.group("eta"), cyclotomic_field(n))
            return cls.band(n, int(match.group("s")), int(match.group("bl")), int(match.group("br")), eta)
        l, r = int(match.group("l")), int(match.group("r"))
        if exponent is None:
            return cls.projective(n, l, r) if family == "P" else cls.simple(n, l, r)
        if family == "P":
            raise ParseError(f"Syzygies of projectives are not modules in the catalog: {text!r}")
        exponent = int(exponent)
        sign = Sign.Plus if exponent >= 0 else Sign.Minus
        return cls.syzygy(n, sign, abs(exponent), l, r)


@dataclass
class ValidationResult:
    """
    Outcome of checking a set of matrices against the defining relations.

    Attributes:
        ok (bool): True when every relation holds exactly.
        failed_relation (str | None): Name of the first violated relation.
    """

    def __init__(self, ok: bool, failed_relation: str = None):
        self.ok = ok
        self.failed_relation = failed_relation

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"[{Fore.GREEN}PASS{Fore.RESET}]"
        return f"[{Fore.RED}FAIL{Fore.RESET}] {self.failed_relation}"


@dataclass
class DecompResult:
    """
    A Krull-Schmidt decomposition of a module.

    Attributes:
        summands (Counter[IndecLabel]): Summand labels with multiplicities.
        witness (SparseMatrix): Invertible change of basis whose column blocks span the summands,
            in the order given by `blocks`.
        blocks (List[IndecLabel]): One label per column block of the witness.
        dim (int): Dimension of the decomposed module.
    """

    def __init__(self, summands: Counter, witness, blocks: List[IndecLabel], dim: int):
        self.summands = summands
        self.witness = witness
        self.blocks = blocks
        self.dim = dim

    @property
    def dims_check(self) -> bool:
        return sum(label.dim * mult for label, mult in self.summands.items()) == self.dim

    def labels(self) -> List[IndecLabel]:
        return sorted(self.summands.elements())

    def to_json(self) -> dict:
        return {
            "summands": [
                {"label": label.to_json(), "mult": self.summands[label]}
                for label in sorted(self.summands)
            ],
            "dims_check": self.dims_check,
        }

    def dims_line(self) -> str:
        parts = [
            f"{mult * label.dim}" for label, mult in sorted(self.summands.items())
        ]
        return f"{self.dim} = {' + '.join(parts) if parts else '0'}"

    def __str__(self):
        parts = []
        for label in sorted(self.summands):
            mult = self.summands[label]
            parts.append(f"{mult}x{label}" if mult > 1 else str(label))
        return " + ".join(parts)

    def __repr__(self):
        return f"[{Fore.CYAN}{self.dim}{Fore.RESET}] -> {Fore.GREEN}{self}{Fore.RESET}"


@dataclass
class CheckReport:
    """
    Result of one verification check.

    A failing report always carries both sides so the two can be diffed. The JSON form
    leaves the wall time out unless asked for, since it is the only field that is not
    reproducible.
    """

    def __init__(
        self,
        check_id: str,
        n: int,
        inputs: dict,
        status: str,
        lhs=None,
        rhs=None,
        detail: str = "",
        elapsed: float = 0.0,
    ):
        self.check_id = check_id
        self.n = n
        self.inputs = inputs
        self.status = status
        self.lhs = lhs
        self.rhs = rhs
        self.detail = detail
        self.elapsed = elapsed

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.Pass

    def to_json(self, timing: bool = False) -> dict:
        data = {
            "check_id": self.check_id,
            "n": self.n,
            "inputs": self.inputs,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
        }
        if timing:
            data["elapsed"] = round(self.elapsed, 6)
        return data

    def to_line(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, ensure_ascii=False)

    def __repr__(self):
        colors = {
            CheckStatus.Pass: Fore.GREEN,
            CheckStatus.Fail: Fore.RED,
            CheckStatus.Inconclusive: Fore.YELLOW,
        }
        color = colors.get(self.status, Fore.RESET)
        return f"[{color}{self.status.upper()}{Fore.RESET}] {self.check_id} (n={self.n})"


class RelationModel:
    """
    A named Green ring identity with both of its checks.

    `symbolic(presentation, tables, m_values, etas)` returns (tag, lhs, rhs, stable) tuples of
    ring elements that must agree after normal form (stable normal form when `stable`).
    `oracle(n, m_values, etas)` returns (tag, (A, B), expected) tuples: the summands the
    module oracle must find in A (x) B. `images(presentation, m_values, etas)` returns
    (tag, element, stable) tuples of ring elements whose image among modules must vanish
    (modulo projectives when `stable`). Relations without a module-side statement leave
    both None.
    """

    def __init__(
        self,
        name: str,
        statement: str,
        symbolic,
        oracle=None,
        uses_bands: bool = False,
        images=None,
    ):
        self.name = name
        self.statement = statement
        self.symbolic = symbolic
        self.oracle = oracle
        self.uses_bands = uses_bands
        self.images = images

    def __repr__(self):
        return (
            f"RelationModel(name='{self.name}', "
            f"statement='{self.statement}', "
            f"oracle={self.oracle is not None}, "
            f"images={self.images is not None}, "
            f"uses_bands={self.uses_bands})"
        )


class Timer:
    """Context manager measuring wall time for a CheckReport."""

    def __enter__(self):
        self.start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False


@dataclass
class Config:
    """
    Run configuration shared by the command line and the verification harness.

    Attributes:
        n (int): Order of the root of unity q.
        cache_dir (str | None): Where DerivedTables are persisted; resolved lazily.
        seed (int): Seed for the deterministic coefficient sweeps.
        fmt (OutputFormat): Output format of the command line.
        allow_large (bool): Permits n = 5.
        jobs (int): Worker processes for verification fan-out.
        verbose (bool): Prints progress lines.
        timing (bool): Adds wall time to report lines.
    """

    n: int = 3
    cache_dir: str = None
    seed: int = 0
    fmt: str = OutputFormat.Pretty
    allow_large: bool = False
    jobs: int = 1
    verbose: bool = False
    timing: bool = False

    def validate(self) -> "Config":
        if self.n < 3:
            raise RangeError(f"n must be at least 3, got {self.n}")
        if self.n > 5:
            raise RangeError(f"n is capped at 5, got {self.n}")
        if self.n == 5 and not self.allow_large:
            raise LargeOrderRefused(
                "n = 5 needs --allow-large: the radical of the 625-dimensional algebra and the "
                "module sweeps take hours of exact arithmetic"
            )
        if self.fmt not in (OutputFormat.Json, OutputFormat.Pretty):
            raise RangeError(f"Unknown output format {self.fmt!r}")
        if self.jobs < 1:
            raise RangeError("--jobs must be positive")
        return self


class TableCache:
    """
    On-disk store of DerivedTables and catalog fingerprints, one JSON file per n.

    The location is `--cache-dir`, else the `GR_CACHE_DIR` environment variable, else a
    per-user data directory.
    """

    def __init__(self, cache_dir: str = None):
        self.cache_folder_name = "cache"
        self.cache_folder_path = cache_dir or os.environ.get("GR_CACHE_DIR") or ""

    def _get_user_data_dir(self) -> pathlib.Path:
        """
        Returns a parent directory path where persistent application data can be stored.

        Linux: $XDG_DATA_HOME or ~/.local/share
        macOS: ~/Library/Application Support
        Windows: C:/Users/<USER>/AppData/Roaming
        """
        home = pathlib.Path.home()

        system_paths = {
            "win32": pathlib.Path(os.environ.get("APPDATA", home / "AppData/Roaming")),
            "linux": pathlib.Path(os.environ.get("XDG_DATA_HOME", home / ".local/share")),
            "darwin": home / "Library/Application Support",
        }

        if sys.platform not in system_paths:
            raise SystemError(
                f'Unknown System Platform: {sys.platform}. Only supports {", ".join(list(system_paths.keys()))}'
            )
        return system_paths[sys.platform]

    def folder(self) -> str:
        if not self.cache_folder_path:
            self.cache_folder_path = (
                f"{self._get_user_data_dir()}/taftgreen/{self.cache_folder_name}"
            )
        if not os.path.exists(self.cache_folder_path):
            os.makedirs(self.cache_folder_path, exist_ok=True)
        return self.cache_folder_path

    def path_for(self, n: int) -> str:
        return os.path.join(self.folder(), f"tables-{n}.json")

    @staticmethod
    def checksum(payload: dict) -> str:
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.md5(canonical.encode("utf-8")).hexdigest()

    def load(self, n: int) -> Union[dict, None]:
        """
        Read and verify the cached payload for `n`.

        Returns:
            dict | None: The payload without its checksum, or None when no cache file exists.

        Raises:
            CacheCorrupted: The file is unreadable, has the wrong schema, or fails its checksum.
        """
        path = self.path_for(n)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, ValueError) as err:
            raise CacheCorrupted(f"Cannot read {path}: {err}")
        if not isinstance(data, dict) or "checksum" not in data:
            raise CacheCorrupted(f"{path} has no checksum field")
        stored = data.pop("checksum")
        if self.checksum(data) != stored:
            raise CacheCorrupted(f"Checksum mismatch in {path}")
        if data.get("schema_version") != SCHEMA_VERSION or data.get("n") != n:
            raise CacheCorrupted(f"{path} has schema {data.get('schema_version')} for n={data.get('n')}")
        return data

    def save(self, n: int, payload: dict) -> str:
        data = dict(payload)
        data["schema_version"] = SCHEMA_VERSION
        data["n"] = n
        data["checksum"] = self.checksum(data)
        path = self.path_for(n)
        with open(path, "w", encoding="utf-8") as f:
            f.write(json.dumps(data, sort_keys=True, indent=1) + "\n")
        return path
