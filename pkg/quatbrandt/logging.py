import logging


def get_logger(name: str = "quatbrandt") -> logging.Logger:
    """
    Return a module-level logger configured with a sensible default.

    Logs go to stderr so that CLI stdout stays machine-readable. The level
    comes from ``QUATBRANDT_LOG_LEVEL`` (INFO by default); deployments can
    override handlers via the standard logging configuration mechanisms.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            "[%(asctime)s] [%(levelname)s] %(name)s - %(message)s"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False
    logger.setLevel(_configured_level())
    return logger


def _configured_level() -> int:
    try:
        from quatbrandt.runtime.settings import get_settings

        level = getattr(logging, str(get_settings().LOG_LEVEL).upper(), logging.INFO)
    except Exception:
        return logging.INFO
    return level if isinstance(level, int) else logging.INFO
