"""Rasterizer tests: hand-counted cell sets, bit-exact agreement with the
Fraction clipping oracle, statistical agreement with the dense-sampling
oracle, and PBM/PGM round trips."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from morsemap.field import FormatError, ParameterError, SynthParams, generate
from morsemap.morse import build_complex, compute_gradient, extract_arcs, simplify
from morsemap.raster import (
    ArcImage,
    load_image,
    load_image_p4,
    load_image_p5,
    rasterize,
    store_image,
    store_image_p4,
    store_image_p5,
)

import oracles


def bits_of(reference):
    return np.array(reference, dtype=np.uint8)


class TestRasterize:
    def test_horizontal_segment_on_row_border(self):
        # domain 5x5, n=4: unit cells; y=2 is the border between rows 1 and 2
        img = rasterize([[(0.5, 2.0), (3.5, 2.0)]], (5, 5), 4)
        expect = np.zeros((4, 4), dtype=np.uint8)
        expect[1, 0:4] = 1
        expect[2, 0:4] = 1
        assert np.array_equal(img.bits, expect)

    def test_diagonal_marks_corner_neighbors(self):
        # the diagonal through cell corners (1,1) and (2,2) marks every
        # closed cell incident to those corners
        img = rasterize([[(0.0, 0.0), (2.0, 2.0)]], (5, 5), 4)
        marked = {(i, j) for j in range(4) for i in range(4)
                  if img.bits[j, i]}
        assert marked == {(0, 0), (1, 1), (2, 2), (1, 0), (0, 1),
                          (2, 1), (1, 2)}

    def test_single_point_marks_incident_cells(self):
        img = rasterize([[(2.0, 2.0)]], (5, 5), 4)
        marked = {(i, j) for j in range(4) for i in range(4)
                  if img.bits[j, i]}
        assert marked == {(1, 1), (2, 1), (1, 2), (2, 2)}

    def test_empty_arcs(self):
        img = rasterize([], (5, 5), 8)
        assert img.bits.sum() == 0

    def test_n_one(self):
        img = rasterize([[(0.5, 0.5), (3.0, 2.0)]], (5, 5), 1)
        assert img.bits.tolist() == [[1]]

    def test_rejects_bad_sizes(self):
        with pytest.raises(ParameterError):
            rasterize([], (1, 5), 4)
        with pytest.raises(ParameterError):
            rasterize([], (5, 5), 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_exact_oracle_lattice(self, seed):
        # arc coordinates on the half-integer lattice, like real arcs
        rng = np.random.default_rng(2000 + seed)
        n = int(rng.integers(2, 9))
        dw = int(rng.integers(3, 10))
        dh = int(rng.integers(3, 10))
        arcs = []
        for _ in range(int(rng.integers(1, 5))):
            k = int(rng.integers(2, 6))
            arcs.append([(float(rng.integers(0, 2 * (dw - 1) + 1)) / 2.0,
                          float(rng.integers(0, 2 * (dh - 1) + 1)) / 2.0)
                         for _ in range(k)])
        img = rasterize(arcs, (dw, dh), n)
        ref = oracles.raster_reference_exact(arcs, dw, dh, n)
        assert np.array_equal(img.bits, bits_of(ref))

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_exact_oracle_arbitrary_floats(self, seed):
        rng = np.random.default_rng(3000 + seed)
        n = int(rng.integers(2, 7))
        arcs = [[(float(rng.random() * 4), float(rng.random() * 4))
                 for _ in range(3)]]
        img = rasterize(arcs, (5, 5), n)
        ref = oracles.raster_reference_exact(arcs, 5, 5, n)
        assert np.array_equal(img.bits, bits_of(ref))

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_dense_sampling_oracle(self, seed):
        rng = np.random.default_rng(4000 + seed)
        n = 6
        arcs = []
        for _ in range(2):
            arcs.append([(float(rng.integers(0, 9)) / 2.0,
                          float(rng.integers(0, 9)) / 2.0)
                         for _ in range(3)])
        img = rasterize(arcs, (5, 5), n)
        ref = oracles.raster_reference(arcs, 5, 5, n)
        assert np.array_equal(img.bits, bits_of(ref))

    def test_pipeline_arcs_match_exact_oracle(self):
        params = SynthParams(family="blobs", seed=5, blob_count=2,
                             centers=((5.0, 6.0), (12.0, 11.0)),
                             sigmas=(4.0, 4.0))
        field = generate(params, 17, 17)
        grid = build_complex(field)
        g = simplify(compute_gradient(grid), grid, 0.01)
        arcs = extract_arcs(g, grid)
        assert arcs
        img = rasterize(arcs, (17, 17), 16)
        ref = oracles.raster_reference_exact([a.points for a in arcs],
                                             17, 17, 16)
        assert np.array_equal(img.bits, bits_of(ref))

    def test_deterministic(self):
        arcs = [[(0.5, 1.0), (2.5, 3.5), (4.0, 0.0)]]
        a = rasterize(arcs, (5, 5), 8)
        b = rasterize(arcs, (5, 5), 8)
        assert a == b

    def test_accepts_separatrix_arcs_directly(self):
        grid = build_complex(generate(
            SynthParams(family="blobs", seed=6, blob_count=1,
                        centers=((8.0, 8.0),), sigmas=(4.0,)), 17, 17))
        arcs = extract_arcs(compute_gradient(grid), grid)
        by_object = rasterize(arcs, (17, 17), 8)
        by_points = rasterize([a.points for a in arcs], (17, 17), 8)
        assert by_object == by_points


class TestArcImage:
    def test_validates_shape_and_values(self):
        with pytest.raises(ParameterError):
            ArcImage(3, np.zeros((3, 4), dtype=np.uint8))
        with pytest.raises(ParameterError):
            ArcImage(2, np.full((2, 2), 7, dtype=np.uint8))

    def test_to_float(self):
        img = ArcImage(2, np.array([[0, 1], [1, 0]], dtype=np.uint8))
        f = img.to_float()
        assert f.dtype == np.float32
        assert f.tolist() == [[0.0, 1.0], [1.0, 0.0]]


random_images = st.integers(1, 17).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n)
    .map(lambda v: ArcImage(n, np.array(v, dtype=np.uint8).reshape(n, n))))


class TestImageFiles:
    @settings(max_examples=25, deadline=None)
    @given(img=random_images)
    def test_p4_round_trip(self, img, tmp_path_factory):
        path = tmp_path_factory.mktemp("p4") / "img.pbm"
        store_image_p4(img, path)
        assert load_image_p4(path) == img

    @settings(max_examples=25, deadline=None)
    @given(img=random_images)
    def test_p5_round_trip(self, img, tmp_path_factory):
        path = tmp_path_factory.mktemp("p5") / "img.pgm"
        store_image_p5(img, path)
        assert load_image_p5(path) == img

    def test_store_dispatch_and_autodetect(self, tmp_path):
        img = ArcImage(3, np.eye(3, dtype=np.uint8))
        store_image(img, tmp_path / "a.pbm")
        store_image(img, tmp_path / "a.pgm")
        assert load_image(tmp_path / "a.pbm") == img
        assert load_image(tmp_path / "a.pgm") == img
        with pytest.raises(ParameterError):
            store_image(img, tmp_path / "a.png")

    def test_p4_deterministic_bytes(self, tmp_path):
        img = ArcImage(5, (np.arange(25).reshape(5, 5) % 3 == 0)
                       .astype(np.uint8))
        store_image_p4(img, tmp_path / "x.pbm")
        store_image_p4(img, tmp_path / "y.pbm")
        assert (tmp_path / "x.pbm").read_bytes() == \
            (tmp_path / "y.pbm").read_bytes()

    def test_p4_known_bytes(self, tmp_path):
        # 9 pixels wide: rows pad to 2 bytes; top row 101000001 -> A0 80
        img = ArcImage(9, np.zeros((9, 9), dtype=np.uint8))
        img.bits[0, 0] = img.bits[0, 2] = img.bits[0, 8] = 1
        store_image_p4(img, tmp_path / "k.pbm")
        data = (tmp_path / "k.pbm").read_bytes()
        assert data.startswith(b"P4\n9 9\n")
        raster = data[len(b"P4\n9 9\n"):]
        assert raster[:2] == bytes([0xA0, 0x80])
        assert len(raster) == 18

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "bad.pbm"
        p.write_bytes(b"P6\n3 3\n255\n" + b"\x00" * 27)
        with pytest.raises(FormatError, match="P4 or P5"):
            load_image(p)

    def test_truncated_raster(self, tmp_path):
        p = tmp_path / "short.pbm"
        p.write_bytes(b"P4\n9 9\n" + b"\x00" * 10)
        with pytest.raises(FormatError, match="expected 18"):
            load_image_p4(p)

    def test_rejects_non_square(self, tmp_path):
        p = tmp_path / "rect.pgm"
        p.write_bytes(b"P5\n3 2\n255\n" + b"\x00" * 6)
        with pytest.raises(FormatError, match="square"):
            load_image_p5(p)

    def test_rejects_bad_maxval(self, tmp_path):
        p = tmp_path / "max.pgm"
        p.write_bytes(b"P5\n2 2\n15\n" + b"\x00" * 4)
        with pytest.raises(FormatError, match="maxval"):
            load_image_p5(p)

    def test_rejects_gray_pixel(self, tmp_path):
        p = tmp_path / "gray.pgm"
        p.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 255, 128, 0]))
        with pytest.raises(FormatError, match="expected 0 or 255"):
            load_image_p5(p)

    def test_header_comments_accepted(self, tmp_path):
        p = tmp_path / "c.pgm"
        p.write_bytes(b"P5 # comment\n# another\n2 2\n255\n"
                      + bytes([0, 255, 255, 0]))
        img = load_image_p5(p)
        assert img.bits.tolist() == [[0, 1], [1, 0]]
