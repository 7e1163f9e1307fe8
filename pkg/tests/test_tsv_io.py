import pytest

from cluster_editing import tsv_io
from cluster_editing.config import AlignParams, InputValidationError
from cluster_editing.exact_dp import Clustering
from cluster_editing.graph import Read, build_alignment_graph
from cluster_editing.oracles import CliqueSet
from cluster_editing.predictions import Prediction, VariantKind
from cluster_editing.simulate import SimEvent
from cluster_editing.weights import NEG_INF


def test_reads_with_and_without_header(tmp_path):
    with_header = tmp_path / "reads.tsv"
    with_header.write_text("id\tleft\tlength\n3\t10.5\t112\n7\t20\t90.25\n")
    bare = tmp_path / "bare.tsv"
    bare.write_text("3\t10.5\t112\n7\t20\t90.25\n")

    expected = [Read(id=3, left=10.5, length=112.0), Read(id=7, left=20.0, length=90.25)]
    assert tsv_io.read_reads(with_header) == expected
    assert tsv_io.read_reads(bare) == expected


def test_header_columns_may_be_reordered(tmp_path):
    path = tmp_path / "reads.tsv"
    path.write_text("length\tid\tleft\n112\t1\t5\n")
    assert tsv_io.read_reads(path) == [Read(id=1, left=5.0, length=112.0)]


def test_missing_column_is_reported(tmp_path):
    path = tmp_path / "reads.tsv"
    path.write_text("id\tleft\n1\t5\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_reads(path)


def test_empty_file_has_no_rows(tmp_path):
    path = tmp_path / "reads.tsv"
    path.write_text("")
    assert tsv_io.read_reads(path) == []


def test_bad_read_length_is_rejected(tmp_path):
    path = tmp_path / "reads.tsv"
    path.write_text("0\t1.0\t-5\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_reads(path)


def test_reads_written_then_read(tmp_path):
    reads = [Read(id=i, left=i * 10.5, length=100.0 + i) for i in range(5)]
    path = tmp_path / "out" / "reads.tsv"
    tsv_io.write_reads(reads, path)
    assert path.read_text().splitlines()[0] == "id\tleft\tlength"
    assert tsv_io.read_reads(path) == reads


def test_graph_dump_names_reads_by_id(tmp_path):
    reads = [
        Read(id=10, left=0.0, length=112.0),
        Read(id=20, left=50.0, length=112.0),
        Read(id=30, left=400.0, length=112.0),
    ]
    graph = build_alignment_graph(reads, AlignParams())
    path = tmp_path / "graph.tsv"
    tsv_io.write_graph(graph, [r.id for r in reads], path)

    lines = path.read_text().splitlines()
    assert lines[0] == "idA\tidB\tweight"
    assert len(lines) == 2
    assert lines[1].split("\t")[:2] == ["10", "20"]

    loaded = tsv_io.read_graph(path, [r.id for r in reads])
    assert loaded.weight(0, 1) == graph.weight(0, 1)
    assert loaded.weight(0, 2) == NEG_INF
    assert loaded.pair_count == 1


def test_clustering_uses_read_ids(tmp_path):
    read_ids = [10, 20, 30, 40]
    clustering = Clustering.from_lists([[3, 1], [0], [2]])
    path = tmp_path / "clusters.tsv"
    tsv_io.write_clustering(clustering, read_ids, path)

    assert path.read_text().splitlines() == [
        "cluster_id\tmembers",
        "0\t10",
        "1\t20,40",
        "2\t30",
    ]
    assert tsv_io.read_clustering(path, read_ids) == clustering.canonical()


def test_clustering_with_unknown_read(tmp_path):
    path = tmp_path / "clusters.tsv"
    path.write_text("cluster_id\tmembers\n0\t1,99\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_clustering(path, [1, 2])


def test_headerless_clustering(tmp_path):
    path = tmp_path / "clusters.tsv"
    path.write_text("1\t30\n0\t20,10\n")
    assert tsv_io.read_clustering(path, [10, 20, 30]) == Clustering.from_lists(
        [[1, 0], [2]]
    )


def test_clustering_with_empty_members(tmp_path):
    path = tmp_path / "clusters.tsv"
    path.write_text("cluster_id\tmembers\n0\t\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_clustering(path, [1, 2])


def test_graph_with_unknown_read(tmp_path):
    path = tmp_path / "graph.tsv"
    path.write_text("idA\tidB\tweight\n10\t99\t1.5\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_graph(path, [10, 20])


def test_missing_file_is_invalid_input(tmp_path):
    with pytest.raises(InputValidationError):
        tsv_io.read_reads(tmp_path / "absent.tsv")


def test_malformed_reads_are_invalid_input(tmp_path):
    path = tmp_path / "reads.tsv"
    path.write_text("0\t0\tabc\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_reads(path)


def test_order_file_is_headerless(tmp_path):
    path = tmp_path / "order.txt"
    tsv_io.write_order([2, 0, 1], path)
    assert path.read_text().split() == ["2", "0", "1"]
    assert tsv_io.read_order(path) == [2, 0, 1]


def test_cliques_file(tmp_path):
    path = tmp_path / "cliques.tsv"
    tsv_io.write_cliques(CliqueSet([(0, 1), (1, 2)]), [5, 6, 7], path)
    assert path.read_text().splitlines() == [
        "clique_id\tmembers",
        "0\t5,6",
        "1\t6,7",
    ]


def test_events_round_trip(tmp_path):
    events = [
        SimEvent(position=100.0, kind=VariantKind.DELETION, length=60.0),
        SimEvent(position=900.0, kind=VariantKind.INSERTION, length=30.0),
    ]
    path = tmp_path / "events.tsv"
    tsv_io.write_events(events, path)
    assert tsv_io.read_events(path) == events


def test_unknown_event_kind(tmp_path):
    path = tmp_path / "events.tsv"
    path.write_text("position\tkind\tlength\n10\tinversion\t5\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_events(path)


def test_pvalues(tmp_path):
    path = tmp_path / "pvalues.txt"
    path.write_text("0.01\n0.5\n1\n")
    assert tsv_io.read_pvalues(path) == [0.01, 0.5, 1.0]

    path.write_text("0.01\n1.5\n")
    with pytest.raises(InputValidationError):
        tsv_io.read_pvalues(path)


def test_predictions_round_trip(tmp_path):
    predictions = [
        Prediction(
            start=10.0,
            end=70.0,
            kind=VariantKind.DELETION,
            p_value=0.001,
            support=4,
            deviation=60.0,
        )
    ]
    path = tmp_path / "predictions.tsv"
    tsv_io.write_predictions(predictions, path)
    assert tsv_io.read_predictions(path) == predictions

    tsv_io.write_predictions([], path)
    assert tsv_io.read_predictions(path) == []
