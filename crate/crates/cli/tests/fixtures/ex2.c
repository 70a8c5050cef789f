int fn(){
  int x_1 = 0;
  int x_2 = 10;
  int x_3 = 1;
  while (x_2 > 0)
  {
    int const t_4 = x_3;
    x_3++;
    int const t_5 = t_4 * t_4;
    if ((t_5 % 17) > 7)
    {
      x_2--;
      x_1 = x_1 + t_5;
    }
  }
  return x_1;
}
