import logging
import sys
from app.core.config import settings


def setup_logging(stream=None, level: str = None):
    """Root handler for the API (stdout) and the CLI (stderr, quieter level)."""
    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.StreamHandler(stream or sys.stdout)
        ],
        force=True,
    )
