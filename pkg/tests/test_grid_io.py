import numpy as np
import pandas as pd
import pytest

from star_src.exception import GridFormatError
from star_src.harness import fixtures
from star_src.transform import partial_fourier
from star_src.transform.grid import PhaseSpaceGrid
from star_src.utils import decode_grid, encode_grid, read_grid, write_grid
from star_src.utils.grid_io import AXIS_DTYPE, DATA_DTYPE, HEADER_DTYPE
from star_src.visualization import dump_csv


@pytest.fixture
def grid():
    envelope = fixtures.gaussian((0.1,), (-0.3,), 0.7, 1.1)
    return PhaseSpaceGrid.from_function(lambda a, l: envelope(a, l) * np.exp(0.4j * l[..., 0]),
                                        1, 1, 16, 4.0, 0.5, a_extent=2.0)


def test_write_and_read(grid, tmp_path):
    path = tmp_path / "nested" / "u.ssqg"
    write_grid(grid, str(path))
    back = read_grid(str(path))
    assert back.same_layout(grid)
    assert back.hbar == grid.hbar and back.dual is False
    np.testing.assert_array_equal(back.data, grid.data)
    assert encode_grid(back) == path.read_bytes()


def test_layout_sizes(grid):
    assert HEADER_DTYPE.itemsize == 25
    assert AXIS_DTYPE.itemsize == 24
    payload = encode_grid(grid)
    assert len(payload) == 25 + 2 * 24 + grid.data.size * 16
    assert payload[:4] == b"SSQG"


def test_dual_flag_survives(grid):
    dual = partial_fourier(grid)
    back = decode_grid(encode_grid(dual))
    assert back.dual is True
    assert back.same_layout(dual)


def test_bad_magic(grid):
    payload = encode_grid(grid)
    with pytest.raises(GridFormatError, match="magic"):
        decode_grid(b"QGSS" + payload[4:])


def test_wrong_version(grid):
    payload = bytearray(encode_grid(grid))
    payload[4:8] = np.uint32(7).tobytes()
    with pytest.raises(GridFormatError, match="version"):
        decode_grid(bytes(payload))


@pytest.mark.parametrize("cut", [10, 25 + 24, 16])
def test_truncated(grid, cut):
    payload = encode_grid(grid)
    short = payload[:cut] if cut < 25 + 2 * 24 else payload[:-cut]
    with pytest.raises(GridFormatError):
        decode_grid(short)


def test_counts_must_be_powers_of_two():
    header = np.zeros(1, dtype=HEADER_DTYPE)
    header[0] = (b"SSQG", 1, 1, 1, 0, 1.0)
    axes = np.array([(12, -3.0, 0.5), (8, -2.0, 0.5)], dtype=AXIS_DTYPE)
    data = np.zeros(96, dtype=DATA_DTYPE)
    with pytest.raises(GridFormatError, match="powers of two"):
        decode_grid(header.tobytes() + axes.tobytes() + data.tobytes(), "bad.ssqg")


def test_missing_file(tmp_path):
    with pytest.raises(GridFormatError) as info:
        read_grid(str(tmp_path / "absent.ssqg"))
    assert info.value.path.endswith("absent.ssqg")


def test_dump_csv(grid, tmp_path):
    path = tmp_path / "u.csv"
    dump_csv(grid, str(path))
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["a", "l", "re", "im"]
    assert len(frame) == grid.data.size
    np.testing.assert_allclose(frame["re"] + 1j * frame["im"], grid.data.ravel())
    dump_csv(partial_fourier(grid), str(path))
    assert list(pd.read_csv(path).columns) == ["a", "k", "re", "im"]
