import logging

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from cluster_editing.config import AlignParams, InputValidationError
from cluster_editing.graph import Read, build_alignment_graph, pair_weight
from cluster_editing.pipeline import ClusterAlgorithm, cluster_graph
from cluster_editing.predictions import bh_select
from cluster_editing.weights import NEG_INF

logger = logging.getLogger(__name__)

app = FastAPI(
    title="Cluster Editing API",
    description="Pair weights, read clustering and FDR selection over HTTP",
    version="0.1.0",
)


class ReadModel(BaseModel):
    id: int
    left: float
    length: float = Field(..., gt=0, description="Insert size in base pairs")

    def to_read(self) -> Read:
        return Read(id=self.id, left=self.left, length=self.length)


class WeightRequest(BaseModel):
    a: ReadModel
    b: ReadModel
    params: AlignParams = AlignParams()


class WeightResponse(BaseModel):
    overlapping: bool
    weight: float | None = Field(None, description="Pair weight, null for -inf")


class ClusterRequest(BaseModel):
    reads: list[ReadModel]
    params: AlignParams = AlignParams()
    algo: ClusterAlgorithm = ClusterAlgorithm.ADAPTIVE
    start: int = Field(0, ge=0, description="First vertex of the adaptive order")


class ClusterResponse(BaseModel):
    n: int
    clusters: list[list[int]] = Field(..., description="Read ids per cluster")
    cost: float
    opcount: int


class FdrRequest(BaseModel):
    pvalues: list[float] = Field(..., description="One p-value per candidate")
    rate: float = Field(0.1, gt=0, le=1)
    total: int | None = Field(None, description="Candidate count c, default len")


class FdrResponse(BaseModel):
    selected: list[int]


@app.get("/health")
def health_check() -> dict[str, str]:
    return {"status": "healthy", "version": app.version}


@app.post("/weight", response_model=WeightResponse)
def weight(request: WeightRequest) -> WeightResponse:
    try:
        w = pair_weight(request.a.to_read(), request.b.to_read(), request.params)
    except InputValidationError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    if w == NEG_INF:
        return WeightResponse(overlapping=False, weight=None)
    return WeightResponse(overlapping=True, weight=w)


@app.post("/cluster", response_model=ClusterResponse)
def cluster(request: ClusterRequest) -> ClusterResponse:
    """
    Cluster a batch of reads.

    Reads may arrive in any order; they are sorted by (left, id) first.

    Args:
        request: reads, insert-size model, solver and adaptive start vertex

    Returns:
        ClusterResponse with clusters given as read ids
    """
    reads = sorted((r.to_read() for r in request.reads), key=lambda r: (r.left, r.id))
    try:
        graph = build_alignment_graph(reads, request.params)
        result = cluster_graph(graph, request.algo, start=request.start)
    except InputValidationError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e

    logger.info(f"Clustered {len(reads)} reads with {request.algo.value}")
    clusters = [[reads[v].id for v in c] for c in result.clustering.canonical()]
    return ClusterResponse(
        n=len(reads),
        clusters=clusters,
        cost=result.cost if result.cost is not None else 0.0,
        opcount=result.opcount,
    )


@app.post("/fdr", response_model=FdrResponse)
def fdr(request: FdrRequest) -> FdrResponse:
    try:
        selected = bh_select(request.pvalues, request.rate, request.total)
    except InputValidationError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    return FdrResponse(selected=selected)
