import os

from .message import bot

# Shared logging level for both the client and defaults.py (for headless use)
HAWKESWEB_LOG_LEVEL = os.environ.get("HAWKESWEB_LOG_LEVEL", "INFO")
HAWKESWEB_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL", "QUIET"]
if HAWKESWEB_LOG_LEVEL not in HAWKESWEB_LOG_LEVELS:
    HAWKESWEB_LOG_LEVEL = "INFO"


def logging_level(name):
    """map one of HAWKESWEB_LOG_LEVELS onto a standard logging level"""
    import logging

    if name == "QUIET":
        return logging.CRITICAL + 10
    return getattr(logging, name, logging.INFO)
