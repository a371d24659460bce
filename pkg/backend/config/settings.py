"""
Configuration settings for the fibred coincidence calculator.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Base directory for the application
BASE_DIR = Path(__file__).resolve().parents[1]
REPO_ROOT = BASE_DIR.parent

# Support both the repo-level .env and backend/.env.
load_dotenv(REPO_ROOT / ".env")
load_dotenv(BASE_DIR / ".env", override=False)


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, str(default)))
    except ValueError:
        return default


# Verification grid defaults
DEFAULT_QMAX = _env_int("FIBRED_QMAX", 50)
DEFAULT_RMAX = _env_int("FIBRED_RMAX", 50)

# Half-width of the integer window scanned when the Reidemeister set is infinite
DEFAULT_WINDOW = _env_int("FIBRED_WINDOW", 500)

# Largest (q, r) grid `table` will render
TABLE_CELL_LIMIT = _env_int("FIBRED_TABLE_CELL_LIMIT", 10_000)

# Process pool size for `verify`; 1 runs in-process
VERIFY_WORKERS = max(1, _env_int("FIBRED_VERIFY_WORKERS", 1))

# Largest max(|q|, |r|) for which reports draw the diagram and run the cross-checks
ORACLE_QMAX = _env_int("FIBRED_ORACLE_QMAX", 10_000)

LOG_LEVEL = os.getenv("FIBRED_LOG_LEVEL", "WARNING").upper()

# Comma-separated origins allowed to call the HTTP API
CORS_ALLOWED_ORIGINS = os.getenv("CORS_ALLOWED_ORIGINS", "http://localhost:3000")
