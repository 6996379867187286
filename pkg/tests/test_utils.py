"""Test cases for the utils module."""
import pytest
import structlog
import typer
from structlog import get_logger

from monres.utils import (
    DEFAULT_MAX_T,
    configure_default_logging,
    configure_logging,
    lattice_cap,
    resolve,
)


def test_resolve_unwraps_options() -> None:
    assert resolve(typer.Option(3)) == 3
    assert resolve(5) == 5


@pytest.mark.parametrize(
    "raw, expected",
    [("10", 10), ("0", 1), ("100", 63), ("many", DEFAULT_MAX_T)],
)
def test_lattice_cap(monkeypatch: pytest.MonkeyPatch, raw: str, expected: int) -> None:
    monkeypatch.setenv("MONRES_MAX_T", raw)
    assert lattice_cap() == expected


def test_lattice_cap_default(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("MONRES_MAX_T", raising=False)
    assert lattice_cap() == DEFAULT_MAX_T


def test_logging_goes_to_stderr(capsys: pytest.CaptureFixture) -> None:
    configure_logging(1)
    get_logger().info("hello", value=1)
    captured = capsys.readouterr()
    assert "hello" in captured.err
    assert captured.out == ""
    configure_logging(0)


def test_default_logging_hides_debug(capsys: pytest.CaptureFixture) -> None:
    structlog.reset_defaults()
    configure_default_logging()
    assert structlog.is_configured()
    get_logger().debug("resolution step", degree=1)
    get_logger().warning("careful")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "resolution step" not in captured.err
    assert "careful" in captured.err
    configure_logging(0)


def test_default_logging_keeps_existing_config(capsys: pytest.CaptureFixture) -> None:
    configure_logging(2)
    configure_default_logging()
    get_logger().debug("kept")
    assert "kept" in capsys.readouterr().err
    configure_logging(0)
