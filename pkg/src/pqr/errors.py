"""Exception types shared across the package."""


class PqrError(Exception):
    """Base class for all errors raised by pqr."""


class CorpusError(PqrError):
    """Malformed or inconsistent corpus file."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class DuplicateDocumentError(CorpusError):
    def __init__(self, doc_id, path=None, line=None):
        self.doc_id = doc_id
        super().__init__(f"duplicate doc_id {doc_id!r}", path, line)


class IndexFormatError(PqrError):
    """Index directory is missing files, corrupt, or fails its checksums."""


class VersionMismatchError(IndexFormatError):
    def __init__(self, found, expected):
        self.found = found
        self.expected = expected
        super().__init__(f"index format version {found} is not supported (expected {expected})")


class UnknownDocumentError(PqrError, LookupError):
    def __init__(self, doc_id):
        self.doc_id = doc_id
        super().__init__(f"unknown document {doc_id!r}")


class TermAbsentError(PqrError, LookupError):
    def __init__(self, term, doc_id):
        self.term = term
        self.doc_id = doc_id
        super().__init__(f"term {term!r} does not occur in document {doc_id!r}")


class BudgetExceededError(PqrError):
    def __init__(self, combinations, limit):
        self.combinations = combinations
        self.limit = limit
        super().__init__(
            f"{combinations} candidate passages exceed the enumeration budget of {limit}"
        )


class NotEnoughTermsError(PqrError, ValueError):
    """Fewer than two scorable query terms."""


class QrelsError(PqrError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = f"{path}:{line}: " if line is not None else (f"{path}: " if path else "")
        super().__init__(prefix + message)
