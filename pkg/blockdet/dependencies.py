# blockdet/dependencies.py
from contextlib import contextmanager

from fastapi import HTTPException, status

from .errors import BlockDetError, DimensionError, DomainError, ParseError, ResourceCapError
from .graph import Matrix, as_matrix
from .schemas import MatrixRequest


def error_status(e: BlockDetError) -> int:
    if isinstance(e, ResourceCapError):
        return status.HTTP_413_CONTENT_TOO_LARGE
    if isinstance(e, (DimensionError, ParseError, DomainError)):
        return status.HTTP_400_BAD_REQUEST
    return status.HTTP_422_UNPROCESSABLE_ENTITY


@contextmanager
def http_errors():
    """Re-raise library errors as HTTPException with a matching status."""
    try:
        yield
    except BlockDetError as e:
        raise HTTPException(status_code=error_status(e), detail=str(e)) from e
    except (ValueError, ZeroDivisionError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e)) from e


def request_matrix(body: MatrixRequest) -> Matrix:
    with http_errors():
        return as_matrix(body.entries, body.arithmetic)
