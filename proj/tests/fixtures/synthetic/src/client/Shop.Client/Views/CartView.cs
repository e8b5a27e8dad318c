using System;
using System.Linq;

namespace Shop.Client.Views
{
    /// <summary>
    /// カート画面。商品ごとの小計と合計金額を表示する。
    /// </summary>
    public class CartView
    {
        private readonly ICartModel _model;

        public CartView(ICartModel model)
        {
            _model = model;
        }

        // 合計金額を再計算して表示
        public void Render(IConsole console)
        {
            foreach (var line in _model.Lines)
            {
                console.WriteLine($"{line.Name,-20} {line.Quantity,3} x {line.UnitPrice,8:N0}");
            }
            var sum = _model.Lines.Sum(l => l.Quantity * l.UnitPrice) + _model.Fee;
            console.WriteLine($"合計: {sum:N0} 円");
        }
    }
}
