"""
Herbrand doctrine toolkit - Main Entry Point
"""
import os
import sys
from typing import Optional

from loguru import logger

from cli import dispatch
from config import get_settings


def setup_logging(level: Optional[str] = None):
    """Configure logging"""
    settings = get_settings()
    level = level or settings.log_level

    # Remove default logger
    logger.remove()

    # Console logger
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>",
        level=level
    )

    # File logger
    if settings.log_to_file:
        logger.add(
            os.path.join(settings.log_dir, "herbrand_{time}.log"),
            rotation="1 day",
            retention="7 days",
            level=level,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function} - {message}"
        )


def main():
    """Main entry point"""
    setup_logging()
    sys.exit(dispatch(sys.argv[1:], configure_logging=setup_logging))


if __name__ == "__main__":
    main()
