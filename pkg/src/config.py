import yaml
import os
import sys
import logging
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def load_config() -> dict:
    """Load configuration from config.yaml with environment variable overrides."""
    config_path = Path(__file__).parent.parent / "config.yaml"

    if not config_path.exists():
        logger.error("config.yaml not found at %s", config_path)
        sys.exit(1)

    try:
        with open(config_path, "r") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        logger.error("Failed to parse config.yaml: %s", e)
        sys.exit(1)

    # Override with environment variables if present
    threads = os.getenv("AP3LAB_THREADS")
    if threads:
        try:
            config["counting"]["threads"] = max(1, int(threads))
        except ValueError:
            logger.warning("Ignoring non-integer AP3LAB_THREADS=%s", threads)
    config["app"]["log_level"] = os.getenv(
        "AP3LAB_LOG_LEVEL",
        os.getenv("LOG_LEVEL", config["app"].get("log_level", "INFO")),
    )
    config["ledger"]["sqlite_path"] = os.getenv(
        "AP3LAB_LEDGER_PATH", config["ledger"]["sqlite_path"]
    )
    ledger_flag = os.getenv("AP3LAB_LEDGER")
    if ledger_flag is not None:
        config["ledger"]["enabled"] = ledger_flag.strip().lower() not in ("off", "0", "false")

    return config


CONFIG = load_config()
