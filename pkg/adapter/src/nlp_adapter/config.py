from dataclasses import dataclass

from .errors import AdapterError

DEFAULT_MODEL = "en_core_web_sm"
BUILTIN_MODEL = "builtin"


@dataclass(frozen=True)
class AdapterConfig:
    """Settings for one batch parsing run.

    `model` selects the parser backend: the reserved name "builtin"
    picks the dependency-free rule parser, anything else is loaded as
    a spaCy pipeline.  `split_sentences` off treats each title or
    snippet as a single sentence.
    """

    records_path: str
    out_path: str
    model: str = DEFAULT_MODEL
    split_sentences: bool = True

    def __post_init__(self):
        if not self.records_path:
            raise AdapterError("records_path must be a non-empty path")
        if not self.out_path:
            raise AdapterError("out_path must be a non-empty path")
        if not self.model.strip():
            raise AdapterError("model identifier must be non-empty")
