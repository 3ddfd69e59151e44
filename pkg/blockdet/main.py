# blockdet/main.py
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from . import __version__
from .config import configure_logging, get_settings
from .routers import advisor, matrices

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    configure_logging()
    settings = get_settings()
    logger.info("blockdet API starting (arithmetic=%s, epsilon=%s)", settings.arithmetic.value, settings.epsilon)
    yield
    logger.info("blockdet API shutting down")


app = FastAPI(
    title="blockdet API",
    description="Determinants and permanents through the block structure of a matrix digraph",
    version=__version__,
    lifespan=lifespan,
)

app.include_router(matrices.router)
app.include_router(advisor.router)


@app.get("/")
def read_root():
    return {"service": "blockdet", "version": __version__}
