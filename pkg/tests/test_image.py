import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import at2ff
from at2ff import PgmError


class TestDecodePgm:
    def test_binary_p5(self):
        img = at2ff.decode_pgm(b"P5 2 2 255 " + bytes([0, 128, 255, 7]))
        assert img.dtype == np.uint8
        assert img.tolist() == [[0, 128], [255, 7]]

    def test_ascii_p2(self):
        assert at2ff.decode_pgm(b"P2 1 1 255\n42\n").tolist() == [[42]]

    def test_truncated_payload(self):
        with pytest.raises(PgmError, match="truncated payload"):
            at2ff.decode_pgm(b"P5 2 2 255 " + bytes([1, 2, 3]))

    def test_truncated_ascii_payload(self):
        with pytest.raises(PgmError, match="truncated payload"):
            at2ff.decode_pgm(b"P2 2 2 255\n1 2 3\n")

    def test_comments_in_header(self):
        data = b"P5\n# made by a test\n2 1\n# another remark\n255\n" + bytes([9, 10])
        assert at2ff.decode_pgm(data).tolist() == [[9, 10]]

    def test_crlf_and_tab_whitespace(self):
        data = b"P5\r\n2\t1 255\n" + bytes([5, 6])
        assert at2ff.decode_pgm(data).tolist() == [[5, 6]]

    def test_bad_magic(self):
        with pytest.raises(PgmError, match="magic"):
            at2ff.decode_pgm(b"P6 1 1 255 \x00")

    def test_maxval_too_large(self):
        with pytest.raises(PgmError, match="maxval"):
            at2ff.decode_pgm(b"P2 1 1 65535\n0\n")

    def test_small_maxval_values_kept_verbatim(self):
        assert at2ff.decode_pgm(b"P2 1 1 100\n42\n").tolist() == [[42]]

    def test_non_integer_header(self):
        with pytest.raises(PgmError, match="integers"):
            at2ff.decode_pgm(b"P5 x 2 255 \x00\x00")

    def test_zero_dimension(self):
        with pytest.raises(PgmError, match="positive"):
            at2ff.decode_pgm(b"P5 0 2 255 ")

    def test_empty_input(self):
        with pytest.raises(PgmError, match="unexpected end"):
            at2ff.decode_pgm(b"")

    def test_ascii_sample_out_of_range(self):
        with pytest.raises(PgmError, match="sample"):
            at2ff.decode_pgm(b"P2 1 1 255\n300\n")


class TestEncodePgm:
    def test_minimal_image(self):
        assert at2ff.encode_pgm(np.zeros((1, 1), np.uint8)) == b"P5\n1 1\n255\n\x00"

    def test_payload_length(self):
        img = np.arange(6, dtype=np.uint8).reshape(2, 3)
        data = at2ff.encode_pgm(img)
        assert data == b"P5\n3 2\n255\n" + img.tobytes()
        assert len(data) - len(b"P5\n3 2\n255\n") == 6

    def test_roundtrip_identity(self):
        rng = np.random.default_rng(3)
        img = rng.integers(0, 256, (11, 7)).astype(np.uint8)
        assert np.array_equal(at2ff.decode_pgm(at2ff.encode_pgm(img)), img)

    @settings(max_examples=100)
    @given(st.data())
    def test_roundtrip_property(self, data):
        h = data.draw(st.integers(1, 16))
        w = data.draw(st.integers(1, 16))
        payload = data.draw(st.binary(min_size=h * w, max_size=h * w))
        img = np.frombuffer(payload, np.uint8).reshape(h, w)
        assert np.array_equal(at2ff.decode_pgm(at2ff.encode_pgm(img)), img)


class TestReadWrite:
    def test_file_roundtrip(self, tmp_path):
        img = np.arange(12, dtype=np.uint8).reshape(3, 4)
        path = tmp_path / "img.pgm"
        at2ff.write_pgm(path, img)
        assert np.array_equal(at2ff.read_pgm(path), img)


class TestWindow:
    def test_interior_full_size(self):
        img = np.arange(25, dtype=np.uint8).reshape(5, 5)
        w = at2ff.window(img, 2, 2, 1)
        assert w.values.size == 9
        assert w.center == img[2, 2] / 255.0

    def test_corner_truncated(self):
        img = np.arange(25, dtype=np.uint8).reshape(5, 5)
        assert at2ff.window(img, 0, 0, 1).values.size == 4

    def test_larger_half_size(self):
        img = np.arange(49, dtype=np.uint8).reshape(7, 7)
        assert at2ff.window(img, 3, 3, 2).values.size == 25

    def test_counts_match_offset_enumeration(self):
        img = np.arange(35, dtype=np.uint8).reshape(5, 7)
        for f in (1, 2, 3):
            for i in range(5):
                for j in range(7):
                    w = at2ff.window(img, i, j, f)
                    expected = [
                        img[i + r, j + c] / 255.0
                        for r in range(-f, f + 1)
                        for c in range(-f, f + 1)
                        if 0 <= i + r < 5 and 0 <= j + c < 7
                    ]
                    assert w.values.tolist() == expected
                    assert w.center in w.values

    def test_out_of_range(self):
        img = np.zeros((4, 4), np.uint8)
        with pytest.raises(IndexError):
            at2ff.window(img, 4, 0, 1)
        with pytest.raises(IndexError):
            at2ff.window(img, 0, -1, 1)

    def test_bad_half_size(self):
        with pytest.raises(ValueError):
            at2ff.window(np.zeros((4, 4), np.uint8), 0, 0, 0)


class TestNormalization:
    def test_endpoints(self):
        assert at2ff.normalize(255) == 1.0
        assert at2ff.normalize(0) == 0.0
        assert at2ff.denormalize(1.0) == 255
        assert at2ff.denormalize(0.0) == 0

    def test_half_rounds_away(self):
        # 0.5 * 255 = 127.5 -> 128 under round-half-away-from-zero
        assert at2ff.denormalize(0.5) == 128

    def test_identity_on_all_bytes(self):
        raw = np.arange(256)
        assert np.array_equal(at2ff.denormalize(at2ff.normalize(raw)), raw)

    def test_array_forms(self):
        arr = at2ff.normalize(np.array([[0, 255]], np.uint8))
        assert arr.dtype == np.float64
        back = at2ff.denormalize(arr)
        assert back.dtype == np.uint8
        assert back.tolist() == [[0, 255]]
