"""
Configuration management module.
Loads environment variables and validates the toolkit settings.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent.absolute()

# Load .env file from project root
load_dotenv(PROJECT_ROOT / '.env')


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        return -1  # reported by validate_config


# Oracle size guards (brute force is factorial / exponential in n)
ORACLE_MAX_PERMANENT = _int_setting('TROPICAL_ORACLE_MAX_PERMANENT', 8)
ORACLE_MAX_CYCLE = _int_setting('TROPICAL_ORACLE_MAX_CYCLE', 7)

# CLI Configuration
OUTPUT_FORMAT = os.getenv('TROPICAL_OUTPUT_FORMAT', 'text')
LOG_LEVEL = os.getenv('TROPICAL_LOG_LEVEL', 'WARNING').upper()
TEMPLATES_DIR = Path(os.getenv('TROPICAL_TEMPLATES_DIR', str(PROJECT_ROOT / 'templates')))

OUTPUT_FORMATS = ('text', 'json')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

# Hard ceilings for the guards; beyond these the oracles would not finish
ORACLE_PERMANENT_CEILING = 10
ORACLE_CYCLE_CEILING = 8


def validate_config() -> dict:
    """
    Validate all configuration values.
    Returns a dict with validation results.
    """
    errors = []
    warnings = []

    if not 1 <= ORACLE_MAX_PERMANENT <= ORACLE_PERMANENT_CEILING:
        errors.append(
            f"TROPICAL_ORACLE_MAX_PERMANENT must be an integer in 1..{ORACLE_PERMANENT_CEILING}"
        )

    if not 1 <= ORACLE_MAX_CYCLE <= ORACLE_CYCLE_CEILING:
        errors.append(
            f"TROPICAL_ORACLE_MAX_CYCLE must be an integer in 1..{ORACLE_CYCLE_CEILING}"
        )

    if OUTPUT_FORMAT not in OUTPUT_FORMATS:
        errors.append(f"TROPICAL_OUTPUT_FORMAT must be one of {', '.join(OUTPUT_FORMATS)}")

    if LOG_LEVEL not in LOG_LEVELS:
        warnings.append(f"Unknown TROPICAL_LOG_LEVEL '{LOG_LEVEL}', falling back to WARNING")

    if not TEMPLATES_DIR.is_dir():
        errors.append(f"Report templates not found at: {TEMPLATES_DIR}")

    return {
        'valid': len(errors) == 0,
        'errors': errors,
        'warnings': warnings
    }


def print_config_status():
    """Print current configuration status."""
    print("=" * 50)
    print("Configuration Status")
    print("=" * 50)

    result = validate_config()

    print(f"   Oracle guards: maper n <= {ORACLE_MAX_PERMANENT}, cycles n <= {ORACLE_MAX_CYCLE}")
    print(f"   Output format: {OUTPUT_FORMAT}")
    print(f"   Templates: {TEMPLATES_DIR}")

    if result['valid']:
        print("✅ All configurations are valid!")
    else:
        print("❌ Configuration errors found:")
        for error in result['errors']:
            print(f"   - {error}")

    if result['warnings']:
        print("\n⚠️  Warnings:")
        for warning in result['warnings']:
            print(f"   - {warning}")

    print("=" * 50)
    return result['valid']


if __name__ == '__main__':
    print_config_status()
