"""This module contains configuration options for the command-line interface."""

import argparse
import importlib.metadata
import os
from dataclasses import asdict, dataclass
from pathlib import Path

__version__ = importlib.metadata.version(__package__ or __name__)

TREE_COMMANDS = ("decompose", "factors")
INPUT_COMMANDS = (
    "decompose",
    "factors",
    "closure",
    "verify",
    "check-split",
    "check-corollary",
    "components",
    "stats",
)


@dataclass
class VersionInfo:
    """Version information for hdecomp."""

    version: str  # package version
    extra: str | None  # extra version info (e.g. git commit hash)

    @classmethod
    def get_info(cls, args):
        """Read version info and return instance."""
        return cls(
            version=__version__,
            extra=args.extra_version_info,
        )

    def __str__(self):
        if self.extra:
            return f"hdecomp {self.version} ({self.extra})"
        return f"hdecomp {self.version}"


@dataclass
class ComponentSettings:
    """Base class for components."""

    def to_dict(self):
        """Convert to dictionary."""
        return asdict(self)


@dataclass
class LogSettings(ComponentSettings):
    """Console verbosity and optional debug log file."""

    log_level: str
    store_debug_log: bool
    debug_log_path: Path | None

    @classmethod
    def parse(cls, args):
        """Create class instance from arguments."""
        return cls(
            log_level=args.log_level.upper(),
            store_debug_log=args.debug_log is not None,
            debug_log_path=Path(args.debug_log) if args.debug_log else None,
        )


@dataclass
class LimitSettings(ComponentSettings):
    """Limits for exponential computations."""

    ground_set: int

    @classmethod
    def parse(cls, args):
        """Create class instance from arguments."""
        return cls(ground_set=args.limit)


@dataclass
class OracleSettings(ComponentSettings):
    """Random instances checked by `oracle` when no input file is given."""

    samples: int
    seed: int

    @classmethod
    def parse(cls, args):
        """Create class instance from arguments."""
        return cls(
            samples=getattr(args, "samples", 0),
            seed=getattr(args, "seed", 0),
        )


@dataclass
class CommandSettings(ComponentSettings):
    """
    The requested command and its operands.

    Vertex operands are kept as names; they are resolved once the instance
    has been read:
      - vertex_set: `closure --set`
      - part1: `check-split --u1`
      - path: `components --path`
    """

    command: str
    input: Path | None
    tree: Path | None
    output_format: str
    vertex_set: list[str] | None
    part1: list[str] | None
    path: list[str] | None

    @classmethod
    def parse(cls, args):
        """Create class instance from arguments."""
        return cls(
            command=args.command,
            input=getattr(args, "input", None),
            tree=getattr(args, "tree", None),
            output_format=args.format,
            vertex_set=getattr(args, "vertex_set", None),
            part1=getattr(args, "u1", None),
            path=getattr(args, "path", None),
        )


@dataclass
class Settings:
    """Configuration settings."""

    version_info: VersionInfo
    command_settings: CommandSettings
    limit_settings: LimitSettings
    oracle_settings: OracleSettings
    log_settings: LogSettings

    @classmethod
    def parse(cls, args):
        """Create class instance from arguments."""
        return cls(
            version_info=VersionInfo.get_info(args),
            command_settings=CommandSettings.parse(args),
            limit_settings=LimitSettings.parse(args),
            oracle_settings=OracleSettings.parse(args),
            log_settings=LogSettings.parse(args),
        )


def add_general_args(parser):
    """Add command-line arguments shared by all commands."""

    parser.add_argument(
        "--format",
        choices=("text", "json", "dot"),
        default=os.environ.get("OUTPUT_FORMAT", "text"),
        help="Output format (dot only for decompose and factors). Default: text",
    )

    parser.add_argument(
        "--limit",
        type=int,
        default=os.environ.get("GROUND_SET_LIMIT", 24),
        help="Maximum ground-set size for closed-set enumeration. Default: 24",
    )

    parser.add_argument(
        "--log-level",
        type=str,
        default=os.environ.get("LOG_LEVEL", "WARNING"),
        help="Logging verbosity (log goes to stderr)",
    )

    parser.add_argument(
        "--debug-log",
        type=Path,
        default=os.environ.get("DEBUG_LOG"),
        help="Also write a DEBUG-level log to this file",
    )

    parser.add_argument(
        "--extra-version-info",
        type=str,
        default=None,
        help="Extra version info (e.g., git commit hash)",
    )


def add_oracle_args(parser):
    """Add command-line arguments for random oracle comparisons."""

    parser.add_argument(
        "--samples",
        type=int,
        default=os.environ.get("ORACLE_SAMPLES", 100),
        help="Number of random instances to check without an input file. Default: 100",
    )

    parser.add_argument(
        "--seed",
        type=int,
        default=os.environ.get("ORACLE_SEED", 0),
        help="Seed for random instances. Default: 0",
    )


def add_command_args(parser):
    """Add one subcommand per operation."""

    general = argparse.ArgumentParser(add_help=False)
    add_general_args(general)
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    def command(name, help_, input_required=True):
        sub = commands.add_parser(name, parents=[general], help=help_)
        if input_required:
            sub.add_argument("input", type=Path, help="Instance file")
        return sub

    command("decompose", "Compute an H-tree or report FAIL (exit code 1)")
    command("factors", "Decompose into H-factors")
    sub = command("closure", "List the closed sets, or the closure of --set")
    sub.add_argument(
        "--set",
        dest="vertex_set",
        nargs="*",
        metavar="VERTEX",
        default=None,
        help="Vertices whose closure is computed",
    )
    sub = command("verify", "Validate a JSON tree against an instance")
    sub.add_argument("tree", type=Path, help="JSON tree file")
    sub = command("check-split", "Check the split theorem for the bipartition (U1, U \\ U1)")
    sub.add_argument("--u1", nargs="+", metavar="VERTEX", required=True, help="Vertices of U1")
    command("check-corollary", "Check F_H against the product of its H-factors")
    sub = command("oracle", "Compare with brute-force oracles", input_required=False)
    sub.add_argument("input", type=Path, nargs="?", default=None, help="Instance file")
    add_oracle_args(sub)
    sub = command("components", "List body-connected components")
    sub.add_argument(
        "--path",
        nargs=2,
        metavar=("FROM", "TO"),
        default=None,
        help="Also print a body-path between two vertices",
    )
    command("stats", "Print instance and decomposition statistics")


def parse_args(argv=None):
    """Parse command-line arguments."""

    parser = argparse.ArgumentParser(
        prog="hdecomp", description="Hierarchical decomposition of dihypergraphs"
    )
    parser.add_argument(
        "--version", action="version", version=f"hdecomp {__version__}"
    )

    add_command_args(parser)
    args = parser.parse_args(argv)
    if args.command is None:
        parser.error("a command is required")

    return args
