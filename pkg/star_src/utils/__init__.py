from star_src.utils.grid_io import decode_grid, encode_grid, read_grid, write_grid
