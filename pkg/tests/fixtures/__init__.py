from pathlib import Path
from typing import NamedTuple


class FixturePaths(NamedTuple):
    s3_cayley: Path
    non_associative_cayley: Path
    shifted_identity_cayley: Path
    malformed_cayley: Path
    settings: Path
    settings_unknown_key: Path


paths = FixturePaths(
    s3_cayley=Path(__file__).parent / "s3_cayley.json",
    non_associative_cayley=Path(__file__).parent / "non_associative_cayley.json",
    shifted_identity_cayley=Path(__file__).parent / "shifted_identity_cayley.json",
    malformed_cayley=Path(__file__).parent / "malformed_cayley.json",
    settings=Path(__file__).parent / "settings.yaml",
    settings_unknown_key=Path(__file__).parent / "settings_unknown_key.yaml",
)
