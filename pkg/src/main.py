#!/usr/bin/env python3
"""
Tropical Tensor Toolkit - Main Entry Point
Batch command line front end over the max-plus library.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra.matrix import conjugate, mat_otimes, tensor, vec
from src.config import LOG_LEVEL, OUTPUT_FORMAT, OUTPUT_FORMATS, print_config_status
from src.errors import DimensionError, DomainError, InfeasibleError, ParseError, TropicalError
from src.loaders.text_loader import load_equation, load_matrix
from src.publishers.report_publisher import ReportPublisher
from src.solvers.assignment import maper
from src.solvers.equations import principal_solution, residual_rows, solve_matrix_equation
from src.solvers.spectral import eigenpair, is_irreducible

logger = logging.getLogger(__name__)

# Number of input files each verb takes
VERB_ARITY = {
    'maper': 1,
    'scale': 1,
    'eig': 1,
    'vec': 1,
    'conj': 1,
    'mateq': 1,
    'tensor': 2,
    'mul': 2,
    'solve': 2,
}

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4


@dataclass(frozen=True)
class CliCommand:
    """One batch invocation: a verb, its input files and the output format."""

    verb: str
    inputs: Tuple[str, ...]
    output_format: str = 'text'


def _one_based(indices) -> list:
    return [i + 1 for i in indices]


def _report_maper(paths):
    result = maper(load_matrix(paths[0]))
    return {
        'value': result.value,
        'permutation': result.perm,
        'row_duals': result.row_duals,
        'col_duals': result.col_duals,
    }


def _report_scale(paths):
    A = load_matrix(paths[0])
    result = maper(A)
    C, D = result.scalings()
    return {
        'value': result.value,
        'C': C,
        'D': D,
        'scaled': mat_otimes(mat_otimes(C, A), D),
    }


def _report_eig(paths):
    A = load_matrix(paths[0])
    result = eigenpair(A)
    return {
        'eigenvalue': result.eigenvalue,
        'eigenvector': result.eigenvector,
        'finite_eigenvector': result.finite_eigenvector,
        'irreducible': is_irreducible(A),
    }


def _report_tensor(paths):
    return {'matrix': tensor(load_matrix(paths[0]), load_matrix(paths[1]))}


def _report_mul(paths):
    return {'matrix': mat_otimes(load_matrix(paths[0]), load_matrix(paths[1]))}


def _report_vec(paths):
    return {'matrix': vec(load_matrix(paths[0]))}


def _report_conj(paths):
    return {'matrix': conjugate(load_matrix(paths[0]))}


def _report_solve(paths):
    A = load_matrix(paths[0])
    b = load_matrix(paths[1])
    if b.cols != 1:
        raise DimensionError(f"right-hand side must be a column vector, got {b.rows}x{b.cols}")
    residual = residual_rows(A, b)
    return {
        'principal': principal_solution(A, b),
        'solvable': not residual,
        'residual_rows': _one_based(residual),
    }


def _report_mateq(paths):
    report = solve_matrix_equation(load_equation(paths[0]))
    return {
        'operator_shape': list(report.operator.shape),
        'solvable': report.solvable,
        'solution': report.solution,
        'residual_rows': _one_based(report.residual_rows),
    }


REPORT_BUILDERS = {
    'maper': _report_maper,
    'scale': _report_scale,
    'eig': _report_eig,
    'tensor': _report_tensor,
    'mul': _report_mul,
    'vec': _report_vec,
    'conj': _report_conj,
    'solve': _report_solve,
    'mateq': _report_mateq,
}


def build_report(command: CliCommand) -> dict:
    """Run the library operation behind a verb and collect its results."""
    report = {'verb': command.verb}
    report.update(REPORT_BUILDERS[command.verb](command.inputs))
    return report


def run(command: CliCommand, publisher: Optional[ReportPublisher] = None) -> Tuple[int, str]:
    """
    Execute one command.

    Returns:
        (exit status, text). On success the text is the report for stdout;
        otherwise it is a one-line diagnostic for stderr.
    """
    if command.verb not in VERB_ARITY:
        return EXIT_USAGE, f"❌ unknown command '{command.verb}'"
    expected = VERB_ARITY[command.verb]
    if len(command.inputs) != expected:
        return EXIT_USAGE, (
            f"❌ '{command.verb}' takes {expected} input file(s), got {len(command.inputs)}"
        )
    if command.output_format not in OUTPUT_FORMATS:
        return EXIT_USAGE, f"❌ unknown output format '{command.output_format}'"

    try:
        report = build_report(command)
    except ParseError as e:
        return EXIT_PARSE, f"❌ {e}"
    except (DimensionError, DomainError, InfeasibleError) as e:
        return EXIT_DOMAIN, f"❌ {', '.join(command.inputs)}: {e}"
    except TropicalError as e:
        logger.warning("%s failed: %s", command.verb, e)
        return EXIT_DOMAIN, f"❌ {', '.join(command.inputs)}: {e}"

    publisher = publisher or ReportPublisher()
    return EXIT_OK, publisher.render(report, command.output_format)


def main(argv: Optional[Sequence[str]] = None):
    """Main entry point with argument parsing."""
    parser = argparse.ArgumentParser(
        description='Tropical (max-plus) linear algebra toolkit',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python src/main.py maper A.txt             # Tropical permanent, permutation and duals
  python src/main.py scale A.txt             # Diagonal scalings C, D and C ⊗ A ⊗ D
  python src/main.py eig A.txt               # Maximum cycle mean and an eigenvector
  python src/main.py tensor A.txt B.txt      # Tensor product A ⊠ B
  python src/main.py solve A.txt b.txt       # Principal solution of A ⊗ x = b
  python src/main.py mateq equation.txt      # Solve ⊕ A_i ⊗ X ⊗ B_i = C
  python src/main.py eig A.txt --json        # Machine-readable output
  python src/main.py --check-config          # Check configuration status
        """
    )

    parser.add_argument(
        'verb',
        nargs='?',
        choices=sorted(VERB_ARITY),
        help='Operation to run'
    )

    parser.add_argument(
        'inputs',
        nargs='*',
        help='Input matrix or equation files'
    )

    parser.add_argument(
        '--format',
        dest='output_format',
        choices=OUTPUT_FORMATS,
        default=OUTPUT_FORMAT if OUTPUT_FORMAT in OUTPUT_FORMATS else 'text',
        help='Output format (default from TROPICAL_OUTPUT_FORMAT)'
    )

    parser.add_argument(
        '--json',
        dest='output_format',
        action='store_const',
        const='json',
        help='Shortcut for --format json'
    )

    parser.add_argument(
        '--check-config',
        action='store_true',
        help='Check configuration status and exit'
    )

    args = parser.parse_args(argv)

    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, LOG_LEVEL, logging.WARNING),
        format='%(levelname)s %(name)s: %(message)s',
    )

    if args.check_config:
        sys.exit(EXIT_OK if print_config_status() else 1)

    if args.verb is None:
        parser.error('a command is required')
    if len(args.inputs) != VERB_ARITY[args.verb]:
        parser.error(f"'{args.verb}' takes {VERB_ARITY[args.verb]} input file(s)")

    command = CliCommand(args.verb, tuple(args.inputs), args.output_format)
    status, output = run(command)
    if status == EXIT_OK:
        print(output)
    else:
        print(output, file=sys.stderr)
    sys.exit(status)


if __name__ == '__main__':
    main()
