import pytest

from balanced_coloring.config import DEFAULT_VERTEX_BUDGET, Settings
from balanced_coloring.errors import ConfigurationError, ParseError


def test_defaults():
    settings = Settings.from_environ({})
    assert settings.vertex_budget == DEFAULT_VERTEX_BUDGET
    assert settings.log_level == "WARNING"


def test_environment_values():
    settings = Settings.from_environ({
        "CNBC_VERTEX_BUDGET": "500",
        "CNBC_LOG_LEVEL": "debug",
        "CNBC_DATABASE_URL": "sqlite://",
        "UNRELATED": "x",
    })
    assert settings.vertex_budget == 500
    assert settings.log_level == "DEBUG"
    assert settings.database_url == "sqlite://"


@pytest.mark.parametrize("key,value", [
    ("CNBC_VERTEX_BUDGET", "0"),
    ("CNBC_ENUMERATION_BUDGET", "many"),
    ("CNBC_LOG_LEVEL", "loud"),
])
def test_invalid_environment(key, value):
    with pytest.raises(ConfigurationError):
        Settings.from_environ({key: value})


def test_parse_errors_carry_line_numbers():
    error = ParseError("bad token", 7)
    assert error.detail == "line 7: bad token"
    assert error.line_number == 7
    assert error.exit_code == 2
    assert ParseError("no header").line_number is None
