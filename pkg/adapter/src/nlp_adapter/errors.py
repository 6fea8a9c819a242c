class AdapterError(Exception):
    """Any adapter failure the caller is expected to handle."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.message = message
        self.source = source
        self.line = line
        super().__init__(self._render())

    def _render(self) -> str:
        prefix = ""
        if self.source is not None:
            prefix = self.source if self.line is None else f"{self.source}:{self.line}"
        return f"{prefix}: {self.message}" if prefix else self.message
