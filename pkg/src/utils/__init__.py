# Utils Package