"""SVG scatterplot emitter: determinism, color scales, legends."""

import pytest

from morsemap.embed import EmbeddedPoint, Embedding2D
from morsemap.field import ParameterError
from morsemap.plot import PALETTE, plot_embedding, ramp_color


def toy_embedding(labels=("blobs", "sine", "blobs"), metas=None):
    points = []
    for i, label in enumerate(labels):
        meta = metas[i] if metas is not None else {"x": 50 * i, "variant": i}
        points.append(EmbeddedPoint(id=f"p{i}", x=float(i), y=float(i * i),
                                    label=label, meta=meta))
    return Embedding2D(points, {"method": "pca", "latent_dim": 4})


class TestDeterminism:
    def test_same_bytes_twice(self, tmp_path):
        emb = toy_embedding()
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        plot_embedding(emb, a)
        plot_embedding(emb, b)
        assert a.read_bytes() == b.read_bytes()

    def test_path_input_matches_object_input(self, trained, tmp_path):
        from_path = plot_embedding(trained["embedding"], tmp_path / "a.svg")
        from morsemap.embed import import_embedding
        from_obj = plot_embedding(import_embedding(trained["embedding"]),
                                  None)
        assert from_path == from_obj


class TestGeometry:
    def test_one_circle_per_point(self):
        svg = plot_embedding(toy_embedding(), None)
        assert svg.count("<circle ") == 3

    def test_y_axis_flipped(self):
        # p2 has the largest data y, so it must sit highest (smallest cy)
        svg = plot_embedding(toy_embedding(), None)
        cys = [float(chunk.split('cy="')[1].split('"')[0])
               for chunk in svg.split("<circle ")[1:]]
        assert cys[2] == min(cys)
        assert cys[0] == max(cys)

    def test_empty_embedding_rejected(self):
        with pytest.raises(ParameterError, match="no points"):
            plot_embedding(Embedding2D([], {"method": "pca",
                                            "latent_dim": 2}), None)


class TestCategorical:
    def test_legend_lists_sorted_labels(self):
        svg = plot_embedding(toy_embedding(), None)
        assert ">blobs</text>" in svg and ">sine</text>" in svg
        assert svg.index(">blobs<") < svg.index(">sine<")
        assert PALETTE[0] in svg and PALETTE[1] in svg

    def test_empty_label_shown_as_none(self):
        svg = plot_embedding(toy_embedding(labels=("", "a", "")), None)
        assert ">(none)</text>" in svg

    def test_palette_cycles(self):
        labels = tuple(f"cat{i:02d}" for i in range(14))
        svg = plot_embedding(toy_embedding(labels=labels), None)
        # 14 categories on a 12-color palette reuse the first two colors:
        # cat00 and cat12 share PALETTE[0] (circle + swatch each)
        assert svg.count(PALETTE[0]) == 4
        assert svg.count(PALETTE[2]) == 2  # cat02 circle + swatch only

    def test_legend_overflow_row(self):
        labels = tuple(f"cat{i:02d}" for i in range(20))
        svg = plot_embedding(toy_embedding(labels=labels), None)
        assert "(+5 more)" in svg

    def test_label_text_escaped(self):
        svg = plot_embedding(toy_embedding(labels=("a<b", "c&d", "e")), None)
        assert "a&lt;b" in svg and "c&amp;d" in svg


class TestContinuous:
    def test_numeric_meta_uses_ramp(self):
        svg = plot_embedding(toy_embedding(), None, color_by="x")
        assert ramp_color(0.0) in svg and ramp_color(1.0) in svg
        assert ">scale</text>" in svg
        assert ">0</text>" in svg and ">100</text>" in svg

    def test_mixed_types_fall_back_to_categories(self):
        metas = [{"k": 1}, {"k": "two"}, {"k": 3}]
        svg = plot_embedding(toy_embedding(metas=metas), None, color_by="k")
        assert ">legend</text>" in svg
        assert ">two</text>" in svg

    def test_constant_value_is_fine(self):
        metas = [{"k": 2.5}] * 3
        svg = plot_embedding(toy_embedding(metas=metas), None, color_by="k")
        assert svg.count("<circle ") == 3

    def test_missing_key_names_point(self):
        metas = [{"x": 1}, {"x": 2}, {"y": 3}]
        with pytest.raises(ParameterError, match="'p2'.*'x'"):
            plot_embedding(toy_embedding(metas=metas), None, color_by="x")


class TestRamp:
    def test_anchor_endpoints(self):
        assert ramp_color(0.0) == "#440154"
        assert ramp_color(1.0) == "#fde725"
        assert ramp_color(0.5) == "#21908d"

    def test_clamped(self):
        assert ramp_color(-3.0) == ramp_color(0.0)
        assert ramp_color(7.0) == ramp_color(1.0)

    def test_monotone_green_channel(self):
        greens = [int(ramp_color(t / 20)[3:5], 16) for t in range(21)]
        assert greens == sorted(greens)
