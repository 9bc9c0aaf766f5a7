import pytest

from flashcards import GameState

# Shared reference data from the slow game.
VIEWING_30 = [1, 2, 1, 2, 3, 1, 3, 2, 4, 3, 4, 1, 2, 4, 3, 5, 1, 5, 4, 2, 5, 3, 6, 4, 6, 5,
              1, 6, 2, 3]
COUNTING_30 = [1, 1, 2, 2, 1, 3, 2, 3, 1, 3, 2, 4, 4, 3, 4, 1, 5, 2, 4, 5, 3, 5, 1, 5, 2, 4,
               6, 3, 6, 6]
DECK_100 = [4, 10, 7, 11, 5, 6, 8, 9, 12, 1, 2, 3, 13, 14, 15]

_ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="session")
def slow_game():
    """A slow game run until card 1 has been seen 2001 times.

    Tests may advance it further but must not rely on its exact clock.
    """
    state = GameState("slow")
    state.run_until_seen(1, 2001)
    return state


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
