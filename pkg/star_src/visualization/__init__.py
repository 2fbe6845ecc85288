from star_src.visualization.export import dump_csv, grid_frame
